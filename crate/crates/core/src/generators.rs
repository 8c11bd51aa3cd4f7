//! Constructions for the example families and the fixed figure hypergraphs.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// `k`-uniform tight path on `n` vertices: every window of `k` consecutive
/// vertices is an edge.
pub fn gen_tight_path(k: usize, n: usize) -> Result<Hypergraph> {
    if k < 2 || n < k {
        return Err(Error::InvalidParameters(format!(
            "tight path needs 2 <= k <= n, got k={k}, n={n}"
        )));
    }
    Hypergraph::new(n, (0..=n - k).map(|s| (s..s + k).collect()).collect())
}

/// Edges `{0,1}, {0,1,2}, ..., {0,...,n-1}`.
pub fn gen_nested_chain(n: usize) -> Result<Hypergraph> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("nested chain needs n >= 2, got {n}")));
    }
    Hypergraph::new(n, (2..=n).map(|top| (0..top).collect()).collect())
}

/// One edge containing all `k` vertices.
pub fn gen_single_edge(k: usize) -> Result<Hypergraph> {
    if k == 0 {
        return Err(Error::InvalidParameters("single edge needs k >= 1".into()));
    }
    Hypergraph::new(k, vec![(0..k).collect()])
}

pub const FIGURES: [&str; 4] = ["fig1", "fig2", "fig4", "fig5"];

/// The fixed example hypergraphs.
///
/// * `fig1`: edges of sizes 5, 8, 8 chained through 4-vertex overlaps;
///   lazy number `⌈5p⌉` for `p <= 1/2`.
/// * `fig2`: a 6-edge and a 5-edge sharing two vertices.
/// * `fig4`: a 5-edge nested in an 8-edge.
/// * `fig5`: two 5-edges joined by a 2-edge; labelled `p q r s t` as in the
///   usual drawing.
pub fn gen_figure(name: &str) -> Result<Hypergraph> {
    let range = |a: usize, b: usize| (a..=b).collect::<Vec<usize>>();
    match name {
        "fig1" => Hypergraph::new(13, vec![range(0, 4), range(1, 8), range(5, 12)]),
        "fig2" => Hypergraph::new(9, vec![range(0, 5), range(4, 8)]),
        "fig4" => Hypergraph::new(8, vec![range(0, 4), range(0, 7)]),
        "fig5" => {
            let labels = ["p", "q", "r", "v3", "v4", "v5", "v6", "v7", "s", "t"];
            Hypergraph::new(10, vec![range(0, 4), vec![4, 5], range(5, 9)])?
                .with_labels(labels.iter().map(|s| s.to_string()).collect())
        }
        other => Err(Error::UnknownFigure(other.to_string())),
    }
}
