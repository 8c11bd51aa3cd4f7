//! Exhaustive reference solvers, independent of [`crate::propagation`].
//!
//! They rebuild thresholds from the raw rational and recount edge
//! intersections on every step. Only meant for tiny inputs.

use std::collections::HashSet;

use crate::hypergraph::Hypergraph;
use crate::proportion::Proportion;

pub const ORACLE_MAX_VERTICES: usize = 20;

struct Plain {
    n: usize,
    edges: Vec<(Vec<usize>, usize)>,
}

impl Plain {
    fn new(h: &Hypergraph, p: Proportion) -> Self {
        let n = h.vertex_count();
        assert!(n <= ORACLE_MAX_VERTICES, "oracle limited to {ORACLE_MAX_VERTICES} vertices");
        let edges = h
            .edges()
            .iter()
            .map(|e| {
                let scaled = p.num() as u128 * e.len() as u128;
                let tau = scaled.div_ceil(p.den() as u128) as usize;
                (e.clone(), tau)
            })
            .collect();
        Plain { n, edges }
    }

    fn all(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    fn step(&self, f: u32) -> u32 {
        let mut next = f;
        for (e, tau) in &self.edges {
            let on = e.iter().filter(|&&v| f >> v & 1 == 1).count();
            if on >= *tau {
                for &v in e {
                    next |= 1 << v;
                }
            }
        }
        next
    }

    fn closure(&self, mut f: u32) -> u32 {
        loop {
            let next = self.step(f);
            if next == f {
                return f;
            }
            f = next;
        }
    }
}

/// Smallest lazy burning set size, by enumerating subsets in order of size.
pub fn brute_force_lazy(h: &Hypergraph, p: Proportion) -> usize {
    let g = Plain::new(h, p);
    let all = g.all();
    if g.closure(0) == all {
        return 0;
    }
    for size in 1..=g.n {
        // Gosper's hack walks the `size`-subsets in increasing order
        let mut s: u64 = (1 << size) - 1;
        while s <= all as u64 {
            if g.closure(s as u32) == all {
                return size;
            }
            let c = s & s.wrapping_neg();
            let r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    unreachable!("the full vertex set percolates")
}

/// Fewest rounds to burn everything, by breadth-first search over the
/// states reachable after each round. Every unburned vertex is tried as a
/// source, redundant ones included.
pub fn brute_force_burn(h: &Hypergraph, p: Proportion) -> usize {
    let g = Plain::new(h, p);
    let all = g.all();
    let mut layer: HashSet<u32> = HashSet::from([0]);
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut next = HashSet::new();
        for &f in &layer {
            let spread = g.step(f);
            for u in 0..g.n {
                if f >> u & 1 == 0 {
                    let state = spread | 1 << u;
                    if state == all {
                        return rounds;
                    }
                    next.insert(state);
                }
            }
        }
        layer = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_figure, gen_single_edge};

    fn p(n: u64, d: u64) -> Proportion {
        Proportion::new(n, d).unwrap()
    }

    #[test]
    fn known_values() {
        assert_eq!(brute_force_lazy(&gen_figure("fig5").unwrap(), p(1, 2)), 5);
        let e3 = gen_single_edge(3).unwrap();
        assert_eq!(brute_force_lazy(&e3, p(2, 3)), 2);
        assert_eq!(brute_force_burn(&e3, p(2, 3)), 3);
        let bare = Hypergraph::edgeless(3).unwrap();
        assert_eq!(brute_force_lazy(&bare, p(1, 2)), 3);
        assert_eq!(brute_force_burn(&bare, p(1, 2)), 3);
    }
}
