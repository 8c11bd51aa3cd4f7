//! Fire propagation: single simultaneous steps, lazy closure, and the
//! round-based game.
//!
//! An [`Engine`] compiles a hypergraph and a propagation rule into edge
//! bitmasks with their trigger counts. Edges that can never propagate
//! (trigger count equal to their size) are dropped at compile time, and
//! parallel copies collapse to one mask.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bitset::{FireState, VertexSet};
use crate::error::Result;
use crate::hypergraph::Hypergraph;
use crate::proportion::{threshold, Proportion};

/// How many burning vertices an edge needs before it ignites entirely.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    /// `⌈p|e|⌉` burning vertices.
    Proportion(Proportion),
    /// All but one vertex burning (the classical hypergraph rule).
    Original,
}

impl Rule {
    pub fn threshold(self, size: usize) -> Result<usize> {
        match self {
            Rule::Proportion(p) => threshold(p, size),
            Rule::Original => Ok(if size >= 2 { size - 1 } else { size }),
        }
    }
}

impl From<Proportion> for Rule {
    fn from(p: Proportion) -> Self {
        Rule::Proportion(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CompiledEdge {
    pub mask: VertexSet,
    pub threshold: usize,
}

#[derive(Clone, Debug)]
pub struct Engine {
    n: usize,
    full: VertexSet,
    edges: Vec<CompiledEdge>,
    incident: Vec<Vec<usize>>,
}

/// Result of a lazy closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Closure {
    pub state: FireState,
    /// Simultaneous steps that changed the state.
    pub steps: usize,
}

impl Engine {
    pub fn new(h: &Hypergraph, rule: impl Into<Rule>) -> Result<Self> {
        let rule = rule.into();
        let mut edges: Vec<CompiledEdge> = Vec::with_capacity(h.edge_count());
        for e in h.edges() {
            let t = rule.threshold(e.len())?;
            if t >= e.len() {
                continue;
            }
            let ce = CompiledEdge {
                mask: e.iter().collect(),
                threshold: t,
            };
            if !edges.contains(&ce) {
                edges.push(ce);
            }
        }
        Ok(Self::from_edges(h.vertex_count(), edges))
    }

    pub(crate) fn from_edges(n: usize, edges: Vec<CompiledEdge>) -> Self {
        let mut incident = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for v in e.mask {
                incident[v].push(i);
            }
        }
        Engine {
            n,
            full: VertexSet::full(n),
            edges,
            incident,
        }
    }

    /// The same rule restricted to a vertex subset closed under the
    /// propagating edges (for instance one connected component).
    pub fn restrict(&self, mask: VertexSet) -> Engine {
        let edges = self
            .edges
            .iter()
            .filter(|e| e.mask.is_subset(mask))
            .copied()
            .collect();
        let mut e = Engine::from_edges(self.n, edges);
        e.full = mask & self.full;
        e
    }

    /// Vertex sets of the connected components formed by propagating edges;
    /// vertices in none of them are singleton components. Ordered by least
    /// element.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut seen = VertexSet::empty();
        for v in self.full {
            if seen.contains(v) {
                continue;
            }
            let mut comp = VertexSet::singleton(v);
            loop {
                let grown = self
                    .edges
                    .iter()
                    .filter(|e| !(e.mask & comp).is_empty())
                    .fold(comp, |acc, e| acc | e.mask);
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Lower bound on how many more vertices must be ignited to take the
    /// closed set `x` to everything: either all of the rest, or enough to
    /// lift some unfinished edge to its threshold.
    pub fn need(&self, x: VertexSet) -> usize {
        let rest = (self.full - x).len();
        self.edges
            .iter()
            .filter(|e| !e.mask.is_subset(x))
            .map(|e| e.threshold.saturating_sub((e.mask & x).len()))
            .fold(rest, usize::min)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> VertexSet {
        self.full
    }

    /// Edges able to propagate under the compiled rule.
    pub fn edges(&self) -> &[CompiledEdge] {
        &self.edges
    }

    /// Indices of propagating edges containing `v`.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    /// Vertices lying in no propagating edge; no lazy set or burning
    /// sequence can avoid them.
    pub fn lonely(&self) -> VertexSet {
        let covered = self
            .edges
            .iter()
            .fold(VertexSet::empty(), |acc, e| acc | e.mask);
        self.full - covered
    }

    #[inline]
    fn fires(e: &CompiledEdge, f: VertexSet) -> bool {
        (e.mask & f).len() >= e.threshold
    }

    /// One simultaneous propagation step from the frozen state `f`.
    pub fn step(&self, f: FireState) -> FireState {
        let mut next = f;
        for e in &self.edges {
            if !e.mask.is_subset(f) && Self::fires(e, f) {
                next |= e.mask;
            }
        }
        next
    }

    /// Least fixpoint of [`Engine::step`] containing `seed`, with the number
    /// of simultaneous steps needed to reach it.
    pub fn closure(&self, seed: VertexSet) -> Closure {
        let mut state = seed & self.full;
        let mut steps = 0;
        loop {
            let next = self.step(state);
            if next == state {
                return Closure { state, steps };
            }
            state = next;
            steps += 1;
        }
    }

    /// Same fixpoint as [`Engine::closure`] without tracking rounds; edges
    /// fire as soon as they are scanned, which converges faster.
    pub fn fixpoint(&self, seed: VertexSet) -> FireState {
        let mut state = seed & self.full;
        loop {
            let before = state;
            for e in &self.edges {
                if !e.mask.is_subset(state) && Self::fires(e, state) {
                    state |= e.mask;
                }
            }
            if state == before {
                return state;
            }
        }
    }

    pub fn is_lazy_burning_set(&self, s: VertexSet) -> bool {
        self.fixpoint(s) == self.full
    }

    /// Play the round-based game with the given sources.
    pub fn simulate(&self, sources: &[usize]) -> RoundOutcome {
        let mut out = RoundOutcome {
            valid: true,
            invalid_source: None,
            fully_burned: false,
            rounds: 0,
            sources: sources.to_vec(),
            trace: Vec::with_capacity(sources.len()),
            redundant: Vec::with_capacity(sources.len()),
        };
        if sources.is_empty() {
            out.valid = false;
            return out;
        }
        let mut f = FireState::empty();
        for (i, &u) in sources.iter().enumerate() {
            // the game is over once everything burns, and a source must be
            // unburned at the end of the previous round
            if f == self.full || u >= self.n || f.contains(u) {
                out.valid = false;
                out.invalid_source = Some(i);
                break;
            }
            let spread = self.step(f);
            out.redundant.push(spread.contains(u));
            f = spread.with(u);
            out.trace.push(f);
            out.rounds += 1;
        }
        out.fully_burned = out.valid && f == self.full;
        out
    }
}

/// Outcome of [`simulate_round_game`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundOutcome {
    pub valid: bool,
    /// Index into the source sequence of the first illegal source.
    pub invalid_source: Option<usize>,
    pub fully_burned: bool,
    pub rounds: usize,
    pub sources: Vec<usize>,
    /// `trace[r]` is the fire state at the end of round `r + 1`.
    pub trace: Vec<FireState>,
    pub redundant: Vec<bool>,
}

impl RoundOutcome {
    /// One line per round listing newly burned vertices; the source carries
    /// `*`, and a redundant source additionally carries `R`.
    pub fn trace_text(&self) -> String {
        let mut out = String::new();
        let mut prev = FireState::empty();
        for (r, &state) in self.trace.iter().enumerate() {
            let src = self.sources[r];
            let mut fresh = state - prev;
            fresh.insert(src);
            let _ = write!(out, "{}:", r + 1);
            for v in fresh {
                let _ = write!(out, " {v}");
                if v == src {
                    out.push('*');
                    if self.redundant[r] {
                        out.push('R');
                    }
                }
            }
            out.push('\n');
            prev = state;
        }
        if let Some(i) = self.invalid_source {
            let _ = writeln!(out, "invalid source {} at position {}", self.sources[i], i + 1);
        }
        out
    }
}

pub fn propagate_step(h: &Hypergraph, p: Proportion, f: FireState) -> Result<FireState> {
    Ok(Engine::new(h, p)?.step(f))
}

pub fn closure(h: &Hypergraph, p: Proportion, s: VertexSet) -> Result<Closure> {
    Ok(Engine::new(h, p)?.closure(s))
}

pub fn is_lazy_burning_set(h: &Hypergraph, p: Proportion, s: VertexSet) -> Result<bool> {
    Ok(Engine::new(h, p)?.is_lazy_burning_set(s))
}

pub fn simulate_round_game(h: &Hypergraph, p: Proportion, sources: &[usize]) -> Result<RoundOutcome> {
    Ok(Engine::new(h, p)?.simulate(sources))
}
