use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A size guard was exceeded (qubit count, subset size, enumeration width).
    #[error("resource limit: {0}")]
    Resource(String),

    /// Malformed input to an operation: bad qubit ids, mismatched dimensions,
    /// non-unitary gates, unknown variables.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A physical precondition of a protocol step does not hold.
    #[error("protocol violation: {0}")]
    Protocol(String),

    /// A numerical invariant failed, which signals a construction bug.
    #[error("internal consistency: {0}")]
    Consistency(String),

    /// Misconfigured scenario or command.
    #[error("usage: {0}")]
    Usage(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
