use thiserror::Error;

/// Errors raised by ring, topology and point-set computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: unbound variables, out-of-range indices, mismatched sizes.
    #[error("definition error: {0}")]
    Definition(String),

    /// An operation was called outside of its documented domain.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Operation tables do not describe a commutative unital ring.
    #[error("ring axiom violated: {0}")]
    RingAxiom(String),

    /// Gluing or covering data failed pointwise validation.
    #[error("validation failed: {0}")]
    Validation(String),

    /// A brute-force search exceeded its candidate budget.
    #[error("resource limit exceeded: {what} (limit {limit})")]
    Resource { what: String, limit: u64 },

    /// Polynomial text could not be parsed.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// An internal consistency check failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn definition(msg: impl Into<String>) -> Error {
    Error::Definition(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
