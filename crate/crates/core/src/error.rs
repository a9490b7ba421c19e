use thiserror::Error;

/// Errors raised by graph construction and the moment machinery.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("size limit exceeded: {what} is {actual}, limit {limit}")]
    SizeLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("insufficient moments: need index {needed}, have up to {available}")]
    InsufficientMoments { needed: usize, available: usize },

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("matrix is not symmetric (deviation {0:e})")]
    Asymmetric(f64),

    #[error("shift parameter q must be even, got {0}")]
    OddShift(usize),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
