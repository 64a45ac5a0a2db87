use thiserror::Error;

/// Errors produced by the lowdeg algorithms and parsers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph has {components} connected components; use the per-component API (elimination_forest / augment)")]
    Disconnected { components: usize },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("search budget of {budget} nodes exhausted; the exact value is unknown")]
    Inexact { budget: u64 },

    #[error("instance too large for exhaustive search: n = {n}, limit is {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("not a valid tree: {0}")]
    NotATree(String),

    #[error("invalid edge set: {0}")]
    InvalidEdgeSet(String),

    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
