//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    /// An intermediate arity or size went past the truncation bound.
    #[error("truncation exceeded: {0}")]
    TruncationExceeded(String),

    /// A prover returned `Unknown` where a definite answer was required.
    #[error("incomplete prover: {0}")]
    IncompleteProver(String),

    #[error("square admits no unique diagonal: {0}")]
    NotOrthogonal(String),

    #[error("law violation: {0}")]
    LawViolation(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("validation error: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn size(msg: impl Into<String>) -> Self {
        Error::SizeMismatch(msg.into())
    }

    pub(crate) fn truncation(msg: impl Into<String>) -> Self {
        Error::TruncationExceeded(msg.into())
    }
}
