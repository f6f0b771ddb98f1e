use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Problems found while reading an edge list.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed input {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header announces {expected} edges but {found} were given")]
    EdgeCount { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph is disconnected: no path between vertex {u} and vertex {v}")]
    Disconnected { u: usize, v: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("complete graphs have no near automorphism")]
    NoNearAutomorphism,
    #[error("node budget of {budget} exceeded after {nodes_explored} nodes (incumbent: {})",
        incumbent.map_or_else(|| "none".to_string(), |v| v.to_string()))]
    BudgetExceeded {
        budget: u64,
        nodes_explored: u64,
        incumbent: Option<u64>,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
