//! Exact computation for proportion-based hypergraph burning.
//!
//! Both games are played on a [`Hypergraph`] with an exact [`Proportion`]
//! `p`: an edge `e` ignites entirely once `⌈p|e|⌉` of its vertices burn.

pub mod bitset;
pub mod bounds;
pub mod designs;
pub mod distribution;
pub mod error;
pub mod generators;
pub mod hypergraph;
pub mod probes;
pub mod propagation;
pub mod proportion;
pub mod random;
pub mod solvers;

pub use bitset::{FireState, VertexSet};
pub use error::{Error, Result};
pub use hypergraph::{parse_hypergraph, serialize_hypergraph, strip_nonflammable, Hypergraph};
pub use proportion::{classify_edge, threshold, EdgeClass, Proportion};
