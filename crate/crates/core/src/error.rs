use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A finite point representation does not reach far enough.
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    /// A cover sequence is too shallow to separate the named pair.
    #[error("insufficient depth: points {0:?} and {1:?} are never separated")]
    InsufficientDepth(String, String),

    /// Malformed textual or JSON input.
    #[error("parse error at {token:?}: {reason}")]
    Parse { token: String, reason: String },

    /// A broken internal invariant.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
