//! Exact burning numbers with witnesses.
//!
//! Both solvers report a certified interval `[lower, upper]` together with a
//! witness achieving `upper`. The interval collapses to a single value
//! exactly when every smaller value was refuted by an exhausted search.

mod burn;
mod greedy;
mod lazy;
pub mod oracle;
mod table;

use std::fmt;

use serde::Serialize;

pub use burn::{burning_number, greedy_burning_sequence};
pub use greedy::{greedy_lazy_upper, threshold_cover_greedy};
pub use lazy::{lazy_burning_number, lazy_lower_bound};

/// Environment variable overriding [`SearchConfig::node_budget`].
pub const NODE_BUDGET_ENV: &str = "HB_NODE_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Hypergraphs with more vertices are not searched at all.
    pub max_vertices: usize,
    /// Search nodes allowed per solver call.
    pub node_budget: u64,
    /// Entries kept in the failure memo before least-recently-used eviction.
    pub table_capacity: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_vertices: 64,
            node_budget: 10_000_000,
            table_capacity: 1 << 21,
        }
    }
}

impl SearchConfig {
    /// Defaults, with the node budget taken from `HB_NODE_BUDGET` if set
    /// and parseable.
    pub fn from_env() -> Self {
        let mut cfg = SearchConfig::default();
        if let Some(b) = std::env::var(NODE_BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
        {
            cfg.node_budget = b;
        }
        cfg
    }

    pub fn with_budget(mut self, node_budget: u64) -> Self {
        self.node_budget = node_budget;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Exact,
    /// The node budget ran out; the true value lies in `[lower, upper]`.
    Interval,
    /// Too many vertices to search; only heuristic bounds are reported.
    CapExceeded,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Exact => "exact",
            Status::Interval => "interval",
            Status::CapExceeded => "cap-exceeded",
        })
    }
}

/// Outcome of [`lazy_burning_number`]. `witness` is a lazy burning set of
/// size `upper`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LazyResult {
    pub lower: usize,
    pub upper: usize,
    pub witness: Vec<usize>,
    pub nodes: u64,
    pub root_bounds: (usize, usize),
    pub status: Status,
}

/// Outcome of [`burning_number`]. `witness` is a valid burning sequence of
/// length `upper`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BurnResult {
    pub lower: usize,
    pub upper: usize,
    pub witness: Vec<usize>,
    pub nodes: u64,
    pub root_bounds: (usize, usize),
    pub status: Status,
}

impl LazyResult {
    pub fn value(&self) -> Option<usize> {
        (self.status == Status::Exact).then_some(self.upper)
    }
}

impl BurnResult {
    pub fn value(&self) -> Option<usize> {
        (self.status == Status::Exact).then_some(self.upper)
    }
}

fn write_line(
    f: &mut fmt::Formatter<'_>,
    lower: usize,
    upper: usize,
    witness: &[usize],
    nodes: u64,
    status: Status,
) -> fmt::Result {
    if lower == upper {
        write!(f, "{upper}")?;
    } else {
        write!(f, "[{lower},{upper}]")?;
    }
    for v in witness {
        write!(f, " {v}")?;
    }
    write!(f, " nodes={nodes} status={status}")
}

/// `value witness... nodes=N status=S`; a non-exact value prints as
/// `[lower,upper]`.
impl fmt::Display for LazyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_line(f, self.lower, self.upper, &self.witness, self.nodes, self.status)
    }
}

impl fmt::Display for BurnResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_line(f, self.lower, self.upper, &self.witness, self.nodes, self.status)
    }
}

/// Vertices ordered by descending degree, ties by index.
pub(crate) fn branching_order(h: &crate::Hypergraph) -> Vec<usize> {
    let deg = h.degrees();
    let mut order: Vec<usize> = (0..h.vertex_count()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
    order
}
