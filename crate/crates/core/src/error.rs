use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("proportion must satisfy 0 < num < den, got {num}/{den}")]
    InvalidProportion { num: u64, den: u64 },

    #[error("cannot parse {0:?} as a proportion")]
    ParseProportion(String),

    #[error("arithmetic capacity exceeded while computing {0}")]
    Overflow(&'static str),

    #[error("a hypergraph needs at least one vertex")]
    NoVertices,

    #[error("edge {edge} contains vertex {vertex}, but the hypergraph has only {n} vertices")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },

    #[error("edge {0} is empty")]
    EmptyEdge(usize),

    #[error("{n} vertices exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("unknown figure {0:?}")]
    UnknownFigure(String),

    #[error("not a BIBD({v},{k},{lambda}): {reason}")]
    NotBibd {
        v: usize,
        k: usize,
        lambda: usize,
        reason: String,
    },

    #[error("{engine} automorphism search refuses {v} points (limit {limit})")]
    AutomorphismCap {
        engine: &'static str,
        v: usize,
        limit: usize,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
