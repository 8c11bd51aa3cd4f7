//! Balanced incomplete block designs: validation, λ-multiples, incidence
//! automorphism counting and the design tables.

pub mod automorphism;
pub mod corpus;
pub mod report;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

pub use automorphism::{automorphism_order, brute_force_automorphism_order, AutResult};
pub use corpus::{parse_design_corpus, serialize_design_corpus, shipped_corpus, shipped_design};
pub use report::{correlation_report, table1_row, CorrelationReport, CorrelationRow, Table1Row};

/// A hypergraph certified to be a BIBD(v, k, λ). Repeated blocks are
/// parallel edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Design {
    pub name: String,
    #[serde(skip)]
    pub hypergraph: Hypergraph,
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    /// Blocks through each point.
    pub r: usize,
    /// Number of blocks.
    pub b: usize,
}

/// Check every block size and every point pair, reporting the first
/// offender.
pub fn validate_bibd(h: &Hypergraph, v: usize, k: usize, lambda: usize) -> Result<Design> {
    let fail = |reason: String| Error::NotBibd { v, k, lambda, reason };
    if !(v > k && k >= 2) {
        return Err(fail("parameters need v > k >= 2".into()));
    }
    if lambda == 0 {
        return Err(fail("lambda must be positive".into()));
    }
    if h.vertex_count() != v {
        return Err(fail(format!("hypergraph has {} points", h.vertex_count())));
    }
    let r_num = lambda * (v - 1);
    let b_num = lambda * v * (v - 1);
    if r_num % (k - 1) != 0 || b_num % (k * (k - 1)) != 0 {
        return Err(fail("replication or block count is not an integer".into()));
    }
    let (r, b) = (r_num / (k - 1), b_num / (k * (k - 1)));
    if let Some((i, e)) = h.edges().iter().enumerate().find(|(_, e)| e.len() != k) {
        return Err(fail(format!("block {i} {e:?} has {} points", e.len())));
    }
    let mut pairs = vec![0usize; v * v];
    for e in h.edges() {
        for (i, &a) in e.iter().enumerate() {
            for &c in &e[i + 1..] {
                pairs[a * v + c] += 1;
            }
        }
    }
    for a in 0..v {
        for c in a + 1..v {
            let got = pairs[a * v + c];
            if got != lambda {
                return Err(fail(format!("pair {{{a},{c}}} lies in {got} blocks")));
            }
        }
    }
    if h.edge_count() != b {
        return Err(fail(format!("{} blocks, expected {b}", h.edge_count())));
    }
    Ok(Design {
        name: String::new(),
        hypergraph: h.clone(),
        v,
        k,
        lambda,
        r,
        b,
    })
}

impl Design {
    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Union of the block multisets of two designs on the same points.
    pub fn merge(&self, other: &Design) -> Result<Design> {
        if self.v != other.v || self.k != other.k {
            return Err(Error::InvalidParameters(format!(
                "cannot merge a ({},{}) design with a ({},{}) design",
                self.v, self.k, other.v, other.k
            )));
        }
        let mut edges = self.hypergraph.edges().to_vec();
        edges.extend(other.hypergraph.edges().iter().cloned());
        let h = Hypergraph::new(self.v, edges)?;
        Ok(validate_bibd(&h, self.v, self.k, self.lambda + other.lambda)?
            .named(format!("{}+{}", self.name, other.name)))
    }

    /// Every block repeated: parameters `(v, k, 2λ)`.
    pub fn double(&self) -> Design {
        self.merge(self).expect("a design merges with itself").named(format!("{}-x2", self.name))
    }

    /// Every block repeated three times: parameters `(v, k, 3λ)`.
    pub fn triple(&self) -> Design {
        self.double()
            .merge(self)
            .expect("a design merges with its double")
            .named(format!("{}-x3", self.name))
    }

    /// Blocks sorted, so that designs equal as block multisets compare equal.
    pub fn canonical_blocks(&self) -> Vec<Vec<usize>> {
        self.hypergraph.canonical().edges().to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano_blocks() -> Vec<Vec<usize>> {
        // lines {i, i+1, i+3} mod 7
        (0..7).map(|i| vec![i, (i + 1) % 7, (i + 3) % 7]).collect()
    }

    #[test]
    fn fano_validates() {
        let h = Hypergraph::new(7, fano_blocks()).unwrap();
        let d = validate_bibd(&h, 7, 3, 1).unwrap();
        assert_eq!((d.r, d.b), (3, 7));
        let d2 = d.double();
        assert_eq!((d2.lambda, d2.b, d2.r), (2, 14, 6));
        assert_eq!(d2.hypergraph.distinct_edge_count(), 7);
        assert_eq!(d.triple().lambda, 3);
    }

    #[test]
    fn missing_block_names_a_pair() {
        let mut blocks = fano_blocks();
        blocks.pop();
        let h = Hypergraph::new(7, blocks).unwrap();
        let err = validate_bibd(&h, 7, 3, 1).unwrap_err().to_string();
        assert!(err.contains("pair {"), "{err}");
        assert!(err.contains("lies in 0 blocks"), "{err}");
    }

    #[test]
    fn bad_parameters() {
        let h = Hypergraph::new(7, fano_blocks()).unwrap();
        assert!(validate_bibd(&h, 7, 3, 2).is_err());
        assert!(validate_bibd(&h, 7, 7, 1).is_err());
        assert!(validate_bibd(&h, 7, 3, 0).is_err());
        assert!(validate_bibd(&h, 8, 3, 1).is_err());
    }

    #[test]
    fn wrong_block_size_is_named() {
        let mut blocks = fano_blocks();
        blocks[2] = vec![2, 3, 5, 6];
        let h = Hypergraph::new(7, blocks).unwrap();
        let err = validate_bibd(&h, 7, 3, 1).unwrap_err().to_string();
        assert!(err.contains("block 2"), "{err}");
    }
}
