//! Incidence automorphism group orders.
//!
//! An incidence automorphism is a point permutation together with a block
//! bijection preserving incidence. Point permutations preserving the block
//! multiset each extend to exactly `Π mult(B)!` block bijections (parallel
//! copies may be matched in any order), so
//! `order = point_stabilizer_count × multiplicity_factor`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

pub const REFINEMENT_MAX_POINTS: usize = 16;
pub const BRUTE_FORCE_MAX_POINTS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AutResult {
    pub order: u128,
    /// Point permutations preserving the block multiset.
    pub point_stabilizer_count: u128,
    /// `Π mult(B)!` over distinct blocks.
    pub multiplicity_factor: u128,
    /// Whether the product overflowed 64 bits and was redone in 128.
    pub wide: bool,
}

/// Product of small factors: 64-bit checked first, recomputed in 128-bit on
/// overflow.
fn product(factors: &[u64]) -> Result<(u128, bool)> {
    if let Some(p) = factors.iter().try_fold(1u64, |acc, &f| acc.checked_mul(f)) {
        return Ok((p as u128, false));
    }
    factors
        .iter()
        .try_fold(1u128, |acc, &f| acc.checked_mul(f as u128))
        .map(|p| (p, true))
        .ok_or(Error::Overflow("automorphism group order"))
}

struct Blocks {
    n: usize,
    /// Distinct blocks with multiplicities.
    mult: HashMap<VertexSet, u64>,
    list: Vec<(VertexSet, u64)>,
    /// Distinct blocks through each point.
    through: Vec<Vec<usize>>,
}

impl Blocks {
    fn new(h: &Hypergraph) -> Self {
        let mut mult: HashMap<VertexSet, u64> = HashMap::new();
        for i in 0..h.edge_count() {
            *mult.entry(h.edge_mask(i)).or_default() += 1;
        }
        let mut list: Vec<(VertexSet, u64)> = mult.iter().map(|(&b, &m)| (b, m)).collect();
        list.sort();
        let mut through = vec![Vec::new(); h.vertex_count()];
        for (i, (b, _)) in list.iter().enumerate() {
            for x in *b {
                through[x].push(i);
            }
        }
        Blocks {
            n: h.vertex_count(),
            mult,
            list,
            through,
        }
    }

    fn multiplicity_factors(&self) -> Vec<u64> {
        self.list
            .iter()
            .flat_map(|&(_, m)| 2..=m)
            .collect()
    }

    fn preserved_by(&self, perm: &[usize]) -> bool {
        self.list.iter().all(|&(b, m)| {
            let image: VertexSet = b.iter().map(|x| perm[x]).collect();
            self.mult.get(&image) == Some(&m)
        })
    }
}

fn finish(blocks: &Blocks, points: (u128, bool)) -> Result<AutResult> {
    let (mf, wide_m) = product(&blocks.multiplicity_factors())?;
    let (order, wide) = match points.0.checked_mul(mf) {
        Some(o) if o <= u64::MAX as u128 && !points.1 && !wide_m => (o, false),
        Some(o) => (o, true),
        None => return Err(Error::Overflow("automorphism group order")),
    };
    Ok(AutResult {
        order,
        point_stabilizer_count: points.0,
        multiplicity_factor: mf,
        wide,
    })
}

/// Reference count by scanning all `v!` point permutations, split across
/// threads by the image of point 0.
pub fn brute_force_automorphism_order(h: &Hypergraph) -> Result<AutResult> {
    let n = h.vertex_count();
    if n > BRUTE_FORCE_MAX_POINTS {
        return Err(Error::AutomorphismCap {
            engine: "brute-force",
            v: n,
            limit: BRUTE_FORCE_MAX_POINTS,
        });
    }
    let blocks = Blocks::new(h);

    fn count(blocks: &Blocks, perm: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        if perm.len() == blocks.n {
            return u64::from(blocks.preserved_by(perm));
        }
        let mut total = 0;
        for y in 0..blocks.n {
            if !used[y] {
                used[y] = true;
                perm.push(y);
                total += count(blocks, perm, used);
                perm.pop();
                used[y] = false;
            }
        }
        total
    }

    let points: u64 = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut used = vec![false; n];
            used[first] = true;
            count(&blocks, &mut vec![first], &mut used)
        })
        .sum();
    finish(&blocks, (points as u128, false))
}

/// Ordered partition of the points.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Partition {
    cells: Vec<Vec<usize>>,
    /// Invariant of each cell from the last refinement round.
    keys: Vec<Vec<(u64, Vec<usize>)>>,
}

impl Partition {
    fn unit(n: usize) -> Self {
        Partition {
            cells: vec![(0..n).collect()],
            keys: vec![Vec::new()],
        }
    }

    fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    fn first_nontrivial(&self) -> Option<usize> {
        self.cells.iter().position(|c| c.len() > 1)
    }

    /// Split `x` off its cell, placing it first.
    fn individualize(&self, x: usize) -> Self {
        let mut out = self.clone();
        let j = out.cells.iter().position(|c| c.contains(&x)).expect("point in partition");
        out.cells[j].retain(|&y| y != x);
        out.cells.insert(j, vec![x]);
        let key = out.keys[j].clone();
        out.keys.insert(j, key);
        out
    }

    /// Shape used to reject non-corresponding partitions.
    fn shape(&self) -> Vec<(usize, &Vec<(u64, Vec<usize>)>)> {
        self.cells.iter().map(Vec::len).zip(self.keys.iter()).collect()
    }

    /// Split cells by the multiset of (multiplicity, cell profile) of the
    /// blocks through each point until stable. Depends on labels only via
    /// the cell order, so corresponding partitions refine correspondingly.
    fn refine(mut self, blocks: &Blocks) -> Self {
        loop {
            let mut cell_of = vec![0usize; blocks.n];
            for (j, c) in self.cells.iter().enumerate() {
                for &x in c {
                    cell_of[x] = j;
                }
            }
            let sigs: Vec<(u64, Vec<usize>)> = blocks
                .list
                .iter()
                .map(|&(b, m)| {
                    let mut prof: Vec<usize> = b.iter().map(|x| cell_of[x]).collect();
                    prof.sort_unstable();
                    (m, prof)
                })
                .collect();
            let mut cells = Vec::with_capacity(self.cells.len());
            let mut keys = Vec::with_capacity(self.cells.len());
            for c in &self.cells {
                let mut groups: Vec<(Vec<(u64, Vec<usize>)>, Vec<usize>)> = Vec::new();
                for &x in c {
                    let mut inv: Vec<(u64, Vec<usize>)> =
                        blocks.through[x].iter().map(|&i| sigs[i].clone()).collect();
                    inv.sort_unstable();
                    match groups.iter_mut().find(|(k, _)| *k == inv) {
                        Some((_, g)) => g.push(x),
                        None => groups.push((inv, vec![x])),
                    }
                }
                groups.sort_by(|a, b| a.0.cmp(&b.0));
                for (k, g) in groups {
                    keys.push(k);
                    cells.push(g);
                }
            }
            let stable = cells.len() == self.cells.len();
            self = Partition { cells, keys };
            if stable {
                return self;
            }
        }
    }
}

/// Find an automorphism mapping the cells of `left` onto the corresponding
/// cells of `right`, if any.
fn extend(blocks: &Blocks, left: &Partition, right: &Partition) -> Option<Vec<usize>> {
    if left.shape() != right.shape() {
        return None;
    }
    let Some(j) = left.first_nontrivial() else {
        let mut perm = vec![0; blocks.n];
        for (l, r) in left.cells.iter().zip(&right.cells) {
            perm[l[0]] = r[0];
        }
        return blocks.preserved_by(&perm).then_some(perm);
    };
    let l = left.cells[j][0];
    let next_left = left.individualize(l).refine(blocks);
    right.cells[j]
        .iter()
        .find_map(|&y| extend(blocks, &next_left, &right.individualize(y).refine(blocks)))
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Order by individualization and refinement with orbit-stabilizer
/// counting: along a base `b_0, b_1, …` (first point of the first
/// non-singleton cell at each level) the order is the product of the orbit
/// sizes of `b_i` under the pointwise stabilizer of `b_0..b_{i-1}`. Levels
/// are processed deepest first, so every automorphism already found fixes
/// the current prefix and can merge orbits.
pub fn automorphism_order(h: &Hypergraph) -> Result<AutResult> {
    let n = h.vertex_count();
    if n > REFINEMENT_MAX_POINTS {
        return Err(Error::AutomorphismCap {
            engine: "refinement",
            v: n,
            limit: REFINEMENT_MAX_POINTS,
        });
    }
    let blocks = Blocks::new(h);

    let mut levels: Vec<(Partition, usize, Partition)> = Vec::new();
    let mut part = Partition::unit(n).refine(&blocks);
    while let Some(j) = part.first_nontrivial() {
        let b = part.cells[j][0];
        let child = part.individualize(b).refine(&blocks);
        levels.push((part, j, child.clone()));
        part = child;
    }
    debug_assert!(part.is_discrete());

    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut orbit_sizes: Vec<u64> = Vec::with_capacity(levels.len());
    for (parent, j, child) in levels.iter().rev() {
        let cell = &parent.cells[*j];
        let base = cell[0];
        let mut uf = UnionFind((0..n).collect());
        for g in &gens {
            for x in 0..n {
                uf.union(x, g[x]);
            }
        }
        let mut failed: Vec<usize> = Vec::new();
        for &x in &cell[1..] {
            if uf.find(x) == uf.find(base) {
                continue;
            }
            let rx = uf.find(x);
            if failed.iter().any(|&f| uf.find(f) == rx) {
                continue;
            }
            match extend(&blocks, child, &parent.individualize(x).refine(&blocks)) {
                Some(g) => {
                    for y in 0..n {
                        uf.union(y, g[y]);
                    }
                    gens.push(g);
                }
                None => failed.push(x),
            }
        }
        let root = uf.find(base);
        orbit_sizes.push(cell.iter().filter(|&&x| uf.find(x) == root).count() as u64);
    }
    finish(&blocks, product(&orbit_sizes)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::corpus::shipped_design;
    use crate::generators::{gen_single_edge, gen_tight_path};

    fn order(name: &str) -> u128 {
        automorphism_order(&shipped_design(name).unwrap().hypergraph).unwrap().order
    }

    #[test]
    fn fano_family() {
        let fano = shipped_design("fano").unwrap().hypergraph;
        let brute = brute_force_automorphism_order(&fano).unwrap();
        assert_eq!(brute.order, 168);
        assert_eq!(automorphism_order(&fano).unwrap(), brute);
        assert_eq!(order("fano-x2"), 168 * 2u128.pow(7));
        assert_eq!(order("fano-x3"), 168 * 6u128.pow(7));
    }

    #[test]
    fn symmetric_designs_count_points_only() {
        // |PGL(4,2)| and the 16-point biplane's group; counting the
        // point/block swaps of these self-dual designs would double both
        assert_eq!(order("pg32-planes"), 20160);
        assert_eq!(order("biplane16"), 11520);
        assert_eq!(order("pg32-lines"), 20160);
        assert_eq!(order("pg23"), 5616);
        assert_eq!(order("ag32-planes"), 1344);
    }

    #[test]
    fn factorization() {
        let r = automorphism_order(&shipped_design("fano-x3").unwrap().hypergraph).unwrap();
        assert_eq!(r.point_stabilizer_count, 168);
        assert_eq!(r.multiplicity_factor, 6u128.pow(7));
        assert_eq!(r.order, r.point_stabilizer_count * r.multiplicity_factor);
    }

    #[test]
    fn small_structures() {
        // path 0-1-2 of 2-edges: reversal only
        let h = gen_tight_path(2, 3).unwrap();
        assert_eq!(automorphism_order(&h).unwrap().order, 2);
        assert_eq!(brute_force_automorphism_order(&h).unwrap().order, 2);
        // single 4-edge: all of S4
        assert_eq!(automorphism_order(&gen_single_edge(4).unwrap()).unwrap().order, 24);
        // edgeless: all permutations
        assert_eq!(automorphism_order(&Hypergraph::edgeless(5).unwrap()).unwrap().order, 120);
    }

    #[test]
    fn caps_are_refused() {
        let big = Hypergraph::edgeless(11).unwrap();
        assert!(matches!(
            brute_force_automorphism_order(&big),
            Err(Error::AutomorphismCap { .. })
        ));
        let huge = Hypergraph::edgeless(17).unwrap();
        assert!(automorphism_order(&huge).is_err());
    }

    #[test]
    fn wide_products() {
        assert_eq!(product(&[u64::MAX, 2]).unwrap(), (u64::MAX as u128 * 2, true));
        assert_eq!(product(&[3, 4]).unwrap(), (12, false));
        assert!(product(&[u64::MAX, u64::MAX, u64::MAX]).is_err());
    }
}
