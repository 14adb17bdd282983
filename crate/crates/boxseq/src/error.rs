//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the exact-arithmetic and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("kernel extraction requires a d x (d+1) matrix of rank d")]
    KernelRank,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("subset enumeration needs {patterns} multiplicity patterns, over the limit 2^{limit}; raise the limit explicitly")]
    SubsetLimit { patterns: u128, limit: u32 },

    #[error("multiplicity enumeration budget exhausted after {0} vectors")]
    KStarBudget(u64),

    #[error("enumeration limits exceeded: {0}")]
    EnumLimit(String),

    #[error("vectors must sum to zero exactly")]
    NonzeroSum,

    #[error("first inverse row cannot be sign-fixed")]
    NormalizeFailed,

    #[error("value too large for this operation: {0}")]
    TooLarge(String),

    /// Reached only if a theorem-backed step fails; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
