use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("matrix is not a realization: {0}")]
    NotARealization(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    /// An enumeration would exceed the configured cap or budget.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// An operation was called outside its precondition. The message names
    /// the violated invariant.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
