//! Error types shared across the crate.

use thiserror::Error;

/// Unified error type for all library operations.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A configuration is structurally unusable (e.g. stream length too
    /// short for the requested circuit).
    #[error("configuration error: {0}")]
    Config(String),

    /// A pattern allocator ran out of fresh variants.
    #[error("pattern allocator exhausted: {0}")]
    Exhausted(String),

    /// Malformed input data (image headers, stream text).
    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code convention: usage/parameter problems exit 2,
    /// runtime and I/O problems exit 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parameter(_) | Error::Config(_) | Error::Exhausted(_) => 2,
            Error::Format(_) | Error::Io(_) => 1,
        }
    }
}
