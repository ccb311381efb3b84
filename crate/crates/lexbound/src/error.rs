//! Crate-wide error type.
//!
//! Callers care about two failure classes: *domain* errors (malformed input,
//! violated preconditions, infeasible instances) and *resource* errors (a
//! search or enumeration exceeded its configured budget). Budget exhaustion
//! is always reported as an error, never turned into an approximate answer.
//! The CLI maps the two classes to exit codes 1 and 2.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Invalid input or violated precondition.
    #[error("{0}")]
    Domain(String),

    /// A search/enumeration budget was exhausted before an exact answer was
    /// reached.
    #[error("resource budget exceeded: {0}")]
    Resource(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    /// Process exit code used by the CLI: 1 for domain errors, 2 for
    /// resource-cap errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) => 1,
            Error::Resource(_) => 2,
        }
    }
}
