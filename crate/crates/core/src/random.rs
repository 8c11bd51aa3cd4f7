//! Reproducible random hypergraphs.
//!
//! The generator is ChaCha8 seeded through `seed_from_u64`, and every draw
//! is built from raw `next_u64` words, so a seed gives the same hypergraph
//! on every platform:
//!
//! 1. `below(b)` takes two words as one 128-bit value, masks it to the bit
//!    length of `b - 1` and rejects values `>= b`.
//! 2. Each edge picks its size `s` with weight `C(n, s)` (so the edge is
//!    uniform over all subsets with size in range), then takes the first
//!    `s` entries of a partial Fisher–Yates shuffle of `0..n`.
//! 3. With `dedup`, an edge equal to an earlier one is redrawn. With
//!    `connected`, the whole hypergraph is redrawn until connected.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, MAX_VERTICES};

const MAX_REDRAWS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomParams {
    pub n: usize,
    pub m: usize,
    pub size_lo: usize,
    pub size_hi: usize,
    pub dedup: bool,
    pub connected: bool,
}

impl RandomParams {
    /// Multi-edges allowed, connectivity not enforced.
    pub fn new(n: usize, m: usize, size_lo: usize, size_hi: usize) -> Self {
        RandomParams {
            n,
            m,
            size_lo,
            size_hi,
            dedup: false,
            connected: false,
        }
    }

    pub fn dedup(mut self, on: bool) -> Self {
        self.dedup = on;
        self
    }

    pub fn connected(mut self, on: bool) -> Self {
        self.connected = on;
        self
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        if self.n == 0 || self.n > MAX_VERTICES {
            return bad(format!("n must be in 1..={MAX_VERTICES}"));
        }
        if self.size_lo == 0 || self.size_lo > self.size_hi || self.size_hi > self.n {
            return bad(format!(
                "edge sizes must satisfy 1 <= {} <= {} <= n = {}",
                self.size_lo, self.size_hi, self.n
            ));
        }
        Ok(())
    }
}

fn below(rng: &mut ChaCha8Rng, bound: u128) -> u128 {
    if bound == 1 {
        return 0;
    }
    let mask = u128::MAX >> (bound - 1).leading_zeros();
    loop {
        let x = ((rng.next_u64() as u128) << 64 | rng.next_u64() as u128) & mask;
        if x < bound {
            return x;
        }
    }
}

/// `C(n, s)` for `s` in `lo..=hi`, by Pascal's rule (no intermediate
/// overflow for `n <= 128`).
fn weights(n: usize, lo: usize, hi: usize) -> Vec<u128> {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[lo..=hi].to_vec()
}

fn draw_edge(rng: &mut ChaCha8Rng, p: &RandomParams, weights: &[u128], total: u128) -> Vec<usize> {
    let mut x = below(rng, total);
    let mut s = p.size_lo;
    for &w in weights {
        if x < w {
            break;
        }
        x -= w;
        s += 1;
    }
    let mut pool: Vec<usize> = (0..p.n).collect();
    for i in 0..s {
        let j = i + below(rng, (p.n - i) as u128) as usize;
        pool.swap(i, j);
    }
    let mut e = pool[..s].to_vec();
    e.sort_unstable();
    e
}

/// A hypergraph determined by `params` and `seed`.
pub fn random_hypergraph(params: &RandomParams, seed: u64) -> Result<Hypergraph> {
    params.validate()?;
    let w = weights(params.n, params.size_lo, params.size_hi);
    // All subsets of 128 points minus the empty one fit exactly.
    let total = w.iter().try_fold(0u128, |a, &b| a.checked_add(b)).expect("at most 2^128 - 1");
    if params.dedup && (params.m as u128) > total {
        return Err(Error::InvalidParameters(format!(
            "only {total} distinct edges exist for these sizes, {} requested",
            params.m
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_REDRAWS {
        let mut edges: Vec<Vec<usize>> = Vec::with_capacity(params.m);
        while edges.len() < params.m {
            let mut e = draw_edge(&mut rng, params, &w, total);
            if params.dedup {
                let mut tries = 0;
                while edges.contains(&e) {
                    tries += 1;
                    if tries > MAX_REDRAWS {
                        return Err(Error::InvalidParameters("could not draw enough distinct edges".into()));
                    }
                    e = draw_edge(&mut rng, params, &w, total);
                }
            }
            edges.push(e);
        }
        let h = Hypergraph::new(params.n, edges)?;
        if !params.connected || h.is_connected() {
            return Ok(h);
        }
    }
    Err(Error::InvalidParameters(format!(
        "no connected sample in {MAX_REDRAWS} draws"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn seeded_output_is_pinned() {
        let h = random_hypergraph(&RandomParams::new(8, 5, 2, 5), 1).unwrap();
        assert_eq!(h, random_hypergraph(&RandomParams::new(8, 5, 2, 5), 1).unwrap());
        // a change to the draw procedure must be deliberate
        let pinned = "8 5\n0 1 2 6\n0 2 4 5 7\n1 2 3 5 7\n1 2 4 5 7\n1 4 5 6 7\n";
        assert_eq!(crate::hypergraph::serialize_hypergraph(&h), pinned);
        assert_ne!(h, random_hypergraph(&RandomParams::new(8, 5, 2, 5), 2).unwrap());
    }

    #[test]
    fn edgeless_when_no_edges() {
        let h = random_hypergraph(&RandomParams::new(5, 0, 1, 3), 9).unwrap();
        assert_eq!(h.edge_count(), 0);
        assert!(random_hypergraph(&RandomParams::new(5, 0, 1, 3).connected(true), 9).is_err());
    }

    #[test]
    fn dedup_limits() {
        let all = random_hypergraph(&RandomParams::new(4, 6, 2, 2).dedup(true), 3).unwrap();
        assert!(all.is_simple());
        assert_eq!(all.edge_count(), 6);
        assert!(random_hypergraph(&RandomParams::new(4, 7, 2, 2).dedup(true), 3).is_err());
    }

    #[test]
    fn bad_parameters() {
        assert!(random_hypergraph(&RandomParams::new(4, 2, 3, 2), 0).is_err());
        assert!(random_hypergraph(&RandomParams::new(4, 2, 0, 2), 0).is_err());
        assert!(random_hypergraph(&RandomParams::new(4, 2, 2, 5), 0).is_err());
    }

    #[test]
    fn size_weights_follow_binomials() {
        assert_eq!(weights(5, 0, 5), vec![1, 5, 10, 10, 5, 1]);
        assert_eq!(weights(128, 64, 64)[0], 23951146041928082866135587776380551750);
        // sizes drawn for n = 6, sizes 1..=2: weight 6 against 15
        let p = RandomParams::new(6, 2000, 1, 2);
        let h = random_hypergraph(&p, 11).unwrap();
        let singles = h.edges().iter().filter(|e| e.len() == 1).count() as f64 / 2000.0;
        assert!((singles - 6.0 / 21.0).abs() < 0.04, "{singles}");
    }

    proptest! {
        #[test]
        fn respects_parameters(n in 1usize..20, m in 0usize..10, a in 1usize..20, b in 0usize..20, seed: u64, conn: bool) {
            let lo = a.min(n);
            let hi = (lo + b).min(n);
            let p = RandomParams::new(n, m, lo, hi).dedup(true).connected(conn && m > 0 && hi >= 2);
            if let Ok(h) = random_hypergraph(&p, seed) {
                prop_assert_eq!(h.vertex_count(), n);
                prop_assert_eq!(h.edge_count(), m);
                prop_assert!(h.edges().iter().all(|e| lo <= e.len() && e.len() <= hi));
                prop_assert_eq!(h.distinct_edge_count(), m);
                if p.connected {
                    prop_assert!(h.is_connected());
                }
                if lo == hi && m > 0 {
                    prop_assert_eq!(h.uniformity(), Some(lo));
                }
            }
        }
    }
}
