use thiserror::Error;

/// Errors produced while building graphs, training models, or scoring partitions.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A line of an edge-list or label file could not be parsed.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Input violates a structural invariant (bad weight, duplicate edge, shape mismatch, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// A numeric argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn validation(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
