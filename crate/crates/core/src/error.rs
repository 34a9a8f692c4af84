use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input is well-formed but too small to mean anything (e.g. `K_0`).
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// Input violates a structural requirement (out-of-range vertex,
    /// non-injective map, improper coloring length, ...).
    #[error("structural error: {0}")]
    Structural(String),
    /// A documented precondition of an operation does not hold.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A configured resource bound was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
