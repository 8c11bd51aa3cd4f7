//! Hypergraph storage, connectivity and the plain-text file format.
//!
//! The text format is line oriented:
//!
//! ```text
//! # optional comment lines
//! n m
//! v v v      (m edge lines, 0-based vertex indices)
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::proportion::{classify_edge, Proportion};

/// Largest vertex count any hypergraph may have.
pub const MAX_VERTICES: usize = VertexSet::CAPACITY;

/// A finite hypergraph on vertices `0..n` with an ordered multiset of edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl Hypergraph {
    /// Edges are sorted and deduplicated internally; their order is kept.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        let mut clean = Vec::with_capacity(edges.len());
        for (i, mut e) in edges.into_iter().enumerate() {
            if e.is_empty() {
                return Err(Error::EmptyEdge(i));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { edge: i, vertex: v, n });
            }
            e.sort_unstable();
            e.dedup();
            clean.push(e);
        }
        Ok(Hypergraph {
            n,
            edges: clean,
            labels: None,
        })
    }

    pub fn edgeless(n: usize) -> Result<Self> {
        Hypergraph::new(n, Vec::new())
    }

    /// Attach display labels, one per vertex.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidParameters(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().and_then(|l| l.get(v)).map(String::as_str)
    }

    /// Vertex with the given label, if labels are present.
    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_mask(&self, i: usize) -> VertexSet {
        self.edges[i].iter().collect()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Distinct edge sizes, ascending.
    pub fn edge_sizes(&self) -> BTreeSet<usize> {
        self.edges.iter().map(Vec::len).collect()
    }

    pub fn max_edge_size(&self) -> Option<usize> {
        self.edges.iter().map(Vec::len).max()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    /// Vertices that belong to no edge of size at least two. Singleton
    /// edges never propagate fire, so they do not count.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        let mut covered = vec![false; self.n];
        for e in self.edges.iter().filter(|e| e.len() >= 2) {
            for &v in e {
                covered[v] = true;
            }
        }
        (0..self.n).filter(|&v| !covered[v]).collect()
    }

    /// `Some(k)` when there is at least one edge and all have size `k`.
    pub fn uniformity(&self) -> Option<usize> {
        let k = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == k).then_some(k)
    }

    /// No parallel edges and no edge with fewer than two vertices.
    pub fn is_simple(&self) -> bool {
        let distinct: BTreeSet<&Vec<usize>> = self.edges.iter().collect();
        distinct.len() == self.edges.len() && self.edges.iter().all(|e| e.len() >= 2)
    }

    /// Number of pairwise distinct edges.
    pub fn distinct_edge_count(&self) -> usize {
        self.edges.iter().collect::<BTreeSet<_>>().len()
    }

    /// The same hypergraph with edges sorted lexicographically. Labels are
    /// dropped, since the text format does not carry them.
    pub fn canonical(&self) -> Hypergraph {
        let mut edges = self.edges.clone();
        edges.sort();
        Hypergraph {
            n: self.n,
            edges,
            labels: None,
        }
    }

    /// Image under the vertex map `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Hypergraph> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n || perm.iter().any(|&v| v >= self.n || std::mem::replace(&mut seen[v], true)) {
            return Err(Error::InvalidParameters("relabeling is not a permutation".into()));
        }
        Hypergraph::new(
            self.n,
            self.edges
                .iter()
                .map(|e| e.iter().map(|&v| perm[v]).collect())
                .collect(),
        )
    }

    /// Keep only the edges selected by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(&[usize]) -> bool) -> Hypergraph {
        Hypergraph {
            n: self.n,
            edges: self.edges.iter().filter(|e| keep(e)).cloned().collect(),
            labels: self.labels.clone(),
        }
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    /// Isolated vertices form singleton components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                incident[v].push(i);
            }
        }
        let mut comp = vec![usize::MAX; self.n];
        let mut edge_done = vec![false; self.edges.len()];
        let mut out = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[start] = id;
            let mut members = vec![start];
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &ei in &incident[u] {
                    if std::mem::replace(&mut edge_done[ei], true) {
                        continue;
                    }
                    for &w in &self.edges[ei] {
                        if comp[w] == usize::MAX {
                            comp[w] = id;
                            members.push(w);
                            stack.push(w);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }
}

/// Remove every edge that is non-flammable for `p` (singletons included).
pub fn strip_nonflammable(h: &Hypergraph, p: Proportion) -> Hypergraph {
    h.filter_edges(|e| classify_edge(p, e.len()).is_flammable())
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing header line \"n m\""))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = fields[..] else {
        return Err(Error::parse(hline, "header must be \"n m\""));
    };
    let n: usize = n
        .parse()
        .map_err(|_| Error::parse(hline, format!("bad vertex count {n:?}")))?;
    let m: usize = m
        .parse()
        .map_err(|_| Error::parse(hline, format!("bad edge count {m:?}")))?;

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| Error::parse(hline, format!("expected {m} edge lines, found {}", edges.len())))?;
        let mut edge = Vec::new();
        for tok in line.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::parse(ln, format!("bad vertex index {tok:?}")))?;
            if v >= n {
                return Err(Error::parse(ln, format!("vertex {v} out of range for n = {n}")));
            }
            if edge.contains(&v) {
                return Err(Error::parse(ln, format!("vertex {v} repeated within an edge")));
            }
            edge.push(v);
        }
        edges.push(edge);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::parse(ln, "trailing data after the last edge"));
    }
    Hypergraph::new(n, edges).map_err(|e| match e {
        Error::NoVertices => Error::parse(hline, "vertex count must be positive"),
        other => other,
    })
}

/// Canonical text form: edges sorted internally, then lexicographically.
pub fn serialize_hypergraph(h: &Hypergraph) -> String {
    let c = h.canonical();
    let mut out = format!("{} {}\n", c.n, c.edges.len());
    for e in &c.edges {
        let line: Vec<String> = e.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

impl FromStr for Hypergraph {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_hypergraph(s)
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_hypergraph(self))
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(n={}, edges={:?})", self.n, self.edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_figure, gen_tight_path};

    #[test]
    fn construction_validates() {
        assert_eq!(Hypergraph::new(0, vec![]), Err(Error::NoVertices));
        assert_eq!(
            Hypergraph::new(3, vec![vec![0, 3]]),
            Err(Error::VertexOutOfRange { edge: 0, vertex: 3, n: 3 })
        );
        assert_eq!(Hypergraph::new(3, vec![vec![]]), Err(Error::EmptyEdge(0)));
        assert!(matches!(Hypergraph::new(200, vec![]), Err(Error::TooManyVertices { .. })));
        let h = Hypergraph::new(3, vec![vec![2, 0, 2]]).unwrap();
        assert_eq!(h.edges(), &[vec![0, 2]]);
    }

    #[test]
    fn parse_examples() {
        let h = parse_hypergraph("3 1\n0 1 2\n").unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edges(), &[vec![0, 1, 2]]);

        let h = parse_hypergraph("2 0\n").unwrap();
        assert_eq!(h.edge_count(), 0);
        assert_eq!(h.vertex_count(), 2);

        let h = parse_hypergraph("# a comment\n\n4 2\n# between\n0 1\n2 3\n").unwrap();
        assert_eq!(h.edge_count(), 2);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_hypergraph(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_hypergraph("3\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_hypergraph("x 1\n0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_hypergraph("3 1\n0 5\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_hypergraph("3 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_hypergraph("3 1\n0 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_hypergraph("3 1\n0 1\n1 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_hypergraph("0 0\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn serialize_is_canonical() {
        let h = Hypergraph::new(4, vec![vec![3, 1], vec![0, 2, 1], vec![1, 3]]).unwrap();
        assert_eq!(serialize_hypergraph(&h), "4 3\n0 1 2\n1 3\n1 3\n");
        assert_eq!(parse_hypergraph(&serialize_hypergraph(&h)).unwrap(), h.canonical());
    }

    #[test]
    fn components_examples() {
        let h = Hypergraph::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(h.components(), vec![vec![0, 1], vec![2, 3]]);
        assert!(!h.is_connected());
        assert!(gen_tight_path(3, 7).unwrap().is_connected());
        assert_eq!(Hypergraph::edgeless(5).unwrap().components().len(), 5);
    }

    #[test]
    fn strip_examples() {
        let p = Proportion::new(5, 6).unwrap();
        let fig2 = gen_figure("fig2").unwrap();
        let s = strip_nonflammable(&fig2, p);
        assert_eq!(s.edges(), &[vec![0, 1, 2, 3, 4, 5]]);
        assert_eq!(s.vertex_count(), 9);

        let half = Proportion::new(1, 2).unwrap();
        let tp = gen_tight_path(3, 6).unwrap();
        assert_eq!(strip_nonflammable(&tp, half), tp);

        let single = Hypergraph::new(5, vec![vec![0, 1, 2, 3, 4]]).unwrap();
        let s = strip_nonflammable(&single, Proportion::new(9, 10).unwrap());
        assert_eq!(s.edge_count(), 0);
        assert_eq!(s.vertex_count(), 5);
    }

    #[test]
    fn structural_queries() {
        let h = Hypergraph::new(5, vec![vec![0, 1, 2], vec![0, 1, 2], vec![3]]).unwrap();
        assert!(!h.is_simple());
        assert_eq!(h.distinct_edge_count(), 2);
        assert_eq!(h.isolated_vertices(), vec![3, 4]);
        assert_eq!(h.uniformity(), None);
        assert_eq!(h.degrees(), vec![2, 2, 2, 1, 0]);
        assert!(h.relabel(&[0, 0, 1, 2, 3]).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_h() -> impl Strategy<Value = Hypergraph> {
            (1usize..12).prop_flat_map(|n| {
                proptest::collection::vec(proptest::collection::btree_set(0..n, 1..=n), 0..8)
                    .prop_map(move |es| Hypergraph::new(n, es.into_iter().map(|e| e.into_iter().collect()).collect()).unwrap())
            })
        }

        proptest! {
            #[test]
            fn text_round_trip(h in arb_h()) {
                let text = serialize_hypergraph(&h);
                let back = parse_hypergraph(&text).unwrap();
                prop_assert_eq!(&back, &h.canonical());
                prop_assert_eq!(serialize_hypergraph(&back), text);
            }

            #[test]
            fn components_partition_vertices(h in arb_h()) {
                let comps = h.components();
                let mut all: Vec<usize> = comps.concat();
                all.sort_unstable();
                prop_assert_eq!(all, (0..h.vertex_count()).collect::<Vec<_>>());
                for e in h.edges() {
                    let c = comps.iter().position(|c| c.contains(&e[0])).unwrap();
                    prop_assert!(e.iter().all(|v| comps[c].contains(v)));
                }
            }
        }
    }
}
