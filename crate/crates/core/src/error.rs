use thiserror::Error;

/// Errors raised by the library. Every variant corresponds to a broken
/// precondition or an explicit truncation limit; nothing is clipped silently.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid rank: expected {expected}, got {got}")]
    InvalidRank { expected: usize, got: usize },
    #[error("sublattice is not primitive")]
    NotPrimitive,
    #[error("invalid splitting: {0}")]
    InvalidSplitting(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
    #[error("malformed cell: {0}")]
    MalformedCell(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("truncation overflow: {what} (try K >= {suggested_k})")]
    TruncationOverflow { what: String, suggested_k: i64 },
    #[error("duplicate key: {0}")]
    DuplicateKey(String),
    #[error("unsupported position ({0}, {1})")]
    UnsupportedPosition(usize, usize),
    #[error("admissibility: {0}")]
    Admissibility(String),
}

pub type Result<T> = std::result::Result<T, Error>;
