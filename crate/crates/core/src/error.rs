use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A construction description violates one of its invariants.
    #[error("invalid construction: {0}")]
    InvalidSpec(String),

    /// An input is larger than the documented cap for an operation.
    #[error("size cap exceeded: {what} supports at most {limit}, got {got}")]
    SizeCap {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    /// Text is not a valid graph6 encoding.
    #[error("malformed graph6 encoding: {0}")]
    MalformedEncoding(String),

    /// Parameters outside an operation's stated preconditions.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// An internal invariant failed; indicates a bug, not bad input.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
