//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A backtracking search ran out of its node budget.
    #[error("search budget exceeded: {0}")]
    SizeLimitExceeded(String),

    /// An operation was called on input outside its stated domain.
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    /// A cone handed to the final-lift constructor is not a cone.
    #[error("malformed cone: {0}")]
    MalformedCone(String),

    /// A builder received the wrong number of labels.
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    /// Text input could not be parsed.
    #[error("parse error at line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },

    /// A map file names a state or action that does not exist.
    #[error("unresolved reference: {0}")]
    UnresolvedReference(String),

    /// A pair of tables does not define a morphism of systems.
    #[error("invalid map: {0}")]
    InvalidMap(String),

    /// A broken internal invariant; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
