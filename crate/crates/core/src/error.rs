use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of a function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Arguments are individually valid but inconsistent with each other.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A numerical routine failed (eigen-solver non-convergence, non-finite result).
    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A symbol description is well-formed but its sup-norm bound cannot be verified.
    #[error("validation error: {0}")]
    Validation(String),

    /// A sequence violates a structural property it was expected to have.
    #[error("consistency error: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
