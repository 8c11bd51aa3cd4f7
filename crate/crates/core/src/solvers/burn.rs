//! Burning numbers by iterative deepening over fire states.
//!
//! A node is the state `F` at the end of a round plus the number of rounds
//! still allowed. From `F` the fire spreads to `P = step(F)` and the next
//! source is any vertex outside `P`: a redundant source `u ∈ P \ F` is
//! dominated by any `u' ∉ P` because the next state `P ∪ {u'}` contains
//! `P ∪ {u} = P`, and every later state is monotone in its predecessor.
//! Redundant sources are therefore only placed when `P` is everything.
//!
//! Depth `d` is refuted only by a search that ran to completion, so the
//! first depth with a witness is the burning number. Refuted
//! `(state, rounds left)` pairs survive between depths, since whether a
//! state can finish within `t` rounds does not depend on how it was
//! reached.

use crate::bitset::{FireState, VertexSet};
use crate::error::Result;
use crate::hypergraph::Hypergraph;
use crate::propagation::{Engine, Rule};
use crate::proportion::Proportion;

use super::lazy::lazy_burning_number;
use super::table::FailureTable;
use super::{branching_order, BurnResult, SearchConfig, Status};

/// Play each round with the non-redundant source that maximizes the fire
/// one step later (ties by branching order).
pub fn greedy_burning_sequence(h: &Hypergraph, p: Proportion) -> Result<Vec<usize>> {
    let engine = Engine::new(h, p)?;
    Ok(greedy_sequence(&engine, &branching_order(h)))
}

fn greedy_sequence(engine: &Engine, order: &[usize]) -> Vec<usize> {
    let full = engine.full();
    let mut seq = Vec::new();
    let mut f = FireState::empty();
    while f != full {
        let spread = engine.step(f);
        let u = if spread == full {
            *order.iter().find(|&&v| !f.contains(v)).expect("unburned vertex")
        } else {
            let mut best: Option<(usize, usize)> = None;
            for &v in order {
                if spread.contains(v) {
                    continue;
                }
                let got = engine.step(spread.with(v)).len();
                if best.map_or(true, |(b, _)| got > b) {
                    best = Some((got, v));
                }
            }
            best.expect("unburned vertex").1
        };
        seq.push(u);
        f = spread.with(u);
    }
    seq
}

struct Exhausted;

struct Search<'a> {
    engine: &'a Engine,
    order: &'a [usize],
    lonely: VertexSet,
    table: FailureTable,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// Rounds needed from `f`: enough sources to make the closure complete,
    /// plus one when the final source cannot be a vertex outside every
    /// propagating edge (then the sources before it already percolate).
    fn lower_bound(&self, f: FireState) -> usize {
        let need = self.engine.need(self.engine.fixpoint(f));
        let unburned = self.engine.full() - f;
        need + usize::from((unburned & self.lonely).is_empty())
    }

    /// Sources (in reverse play order) finishing from `f` within `t >= 1`
    /// rounds.
    fn dfs(&mut self, f: FireState, t: usize) -> std::result::Result<Option<Vec<usize>>, Exhausted> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Exhausted);
        }
        let full = self.engine.full();
        let spread = self.engine.step(f);
        if spread == full {
            let u = *self.order.iter().find(|&&v| !f.contains(v)).expect("unburned vertex");
            return Ok(Some(vec![u]));
        }
        let rest = full - spread;
        if t == 1 {
            return Ok((rest.len() == 1).then(|| rest.to_vec()));
        }
        if self.lower_bound(f) > t || self.table.refuted(f, t) {
            return Ok(None);
        }
        for &u in self.order {
            if !rest.contains(u) {
                continue;
            }
            if let Some(mut seq) = self.dfs(spread.with(u), t - 1)? {
                seq.push(u);
                return Ok(Some(seq));
            }
        }
        self.table.record(f, t);
        Ok(None)
    }
}

/// Exact burning number with an optimal burning sequence, under a
/// proportion or the all-but-one rule.
pub fn burning_number(h: &Hypergraph, rule: impl Into<Rule>, cfg: &SearchConfig) -> Result<BurnResult> {
    let rule = rule.into();
    let engine = Engine::new(h, rule)?;
    let order = branching_order(h);
    let n = h.vertex_count();
    let lonely = engine.lonely();

    let lazy = lazy_burning_number(h, rule, cfg)?;
    let mut lower = lazy.lower + usize::from(lonely.is_empty());
    lower = lower.max(if n >= 2 { 2 } else { 1 });
    let seq = greedy_sequence(&engine, &order);
    let mut res = BurnResult {
        lower,
        upper: seq.len(),
        witness: seq,
        nodes: 0,
        root_bounds: (lower, 0),
        status: Status::Exact,
    };
    res.root_bounds.1 = res.upper;
    if n > cfg.max_vertices {
        if res.lower < res.upper {
            res.status = Status::CapExceeded;
        }
        return Ok(res);
    }

    let mut search = Search {
        engine: &engine,
        order: &order,
        lonely,
        table: FailureTable::new(cfg.table_capacity),
        nodes: 0,
        budget: cfg.node_budget,
    };
    for d in res.lower..res.upper {
        match search.dfs(FireState::empty(), d) {
            Ok(Some(mut seq)) => {
                seq.reverse();
                res.witness = seq;
                res.upper = d;
                break;
            }
            Ok(None) => res.lower = d + 1,
            Err(Exhausted) => {
                res.status = Status::Interval;
                break;
            }
        }
    }
    if res.status == Status::Exact {
        res.lower = res.upper;
    }
    res.nodes = search.nodes;
    Ok(res)
}
