//! Heuristic lazy burning sets used as upper bounds.

use crate::bitset::VertexSet;
use crate::hypergraph::Hypergraph;
use crate::propagation::Engine;
use crate::proportion::Proportion;

/// Grow a set until every flammable edge holds at least its threshold,
/// starting from the vertices in no flammable edge. Each pick is the vertex
/// lying in the most still-deficient edges (ties by index), so the result
/// never exceeds the sum of thresholds plus the uncovered vertices.
pub fn threshold_cover_greedy(h: &Hypergraph, p: Proportion) -> VertexSet {
    let engine = Engine::new(h, p).expect("thresholds of a valid hypergraph fit");
    threshold_cover(&engine)
}

pub(crate) fn threshold_cover(engine: &Engine) -> VertexSet {
    let mut s = engine.lonely();
    let mut deficit: Vec<usize> = engine.edges().iter().map(|e| e.threshold).collect();
    for v in s {
        for &i in engine.incident(v) {
            deficit[i] -= 1;
        }
    }
    loop {
        let best = (engine.full() - s)
            .iter()
            .map(|v| {
                let hits = engine.incident(v).iter().filter(|&&i| deficit[i] > 0).count();
                (hits, v)
            })
            .filter(|&(hits, _)| hits > 0)
            .max_by_key(|&(hits, v)| (hits, std::cmp::Reverse(v)));
        let Some((_, v)) = best else { break };
        s.insert(v);
        for &i in engine.incident(v) {
            deficit[i] = deficit[i].saturating_sub(1);
        }
    }
    s
}

/// Drop members whose removal keeps the set lazy burning, scanning from the
/// lowest-degree end.
fn prune(engine: &Engine, mut s: VertexSet, order: &[usize]) -> VertexSet {
    for &v in order.iter().rev() {
        if s.contains(v) {
            let without = {
                let mut t = s;
                t.remove(v);
                t
            };
            if engine.is_lazy_burning_set(without) {
                s = without;
            }
        }
    }
    s
}

/// Repeatedly add the vertex whose addition burns the most, ties by order.
fn closure_greedy(engine: &Engine, order: &[usize]) -> VertexSet {
    let mut s = engine.lonely();
    let mut burned = engine.fixpoint(s);
    while burned != engine.full() {
        let mut best: Option<(usize, usize)> = None;
        for &v in order {
            if burned.contains(v) || !engine.full().contains(v) {
                continue;
            }
            let got = engine.fixpoint(burned.with(v)).len();
            if best.map_or(true, |(b, _)| got > b) {
                best = Some((got, v));
            }
        }
        let (_, v) = best.expect("an unburned vertex exists");
        s.insert(v);
        burned = engine.fixpoint(burned.with(v));
    }
    s
}

pub(crate) fn best_lazy_set(engine: &Engine, order: &[usize]) -> VertexSet {
    let a = prune(engine, threshold_cover(engine), order);
    let b = prune(engine, closure_greedy(engine, order), order);
    if b.len() < a.len() {
        b
    } else {
        a
    }
}

/// A small lazy burning set: the better of the pruned threshold cover and a
/// pruned closure-driven greedy.
pub fn greedy_lazy_upper(h: &Hypergraph, p: Proportion) -> VertexSet {
    let engine = Engine::new(h, p).expect("thresholds of a valid hypergraph fit");
    best_lazy_set(&engine, &super::branching_order(h))
}
