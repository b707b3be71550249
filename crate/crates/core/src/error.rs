use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not unimodular (det = {det})")]
    NotUnimodular { det: String },

    #[error("matrix is singular")]
    Singular,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("polynomial division is not exact over the integers")]
    InexactDivision,

    #[error("polynomial must be nonzero")]
    ZeroPolynomial,

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,

    #[error("polynomial is not square-free")]
    NotSquareFree,

    #[error("M^{k} has eigenvalue 1: the fixed set of M^{k} on the torus is infinite")]
    DegenerateFixedSet { k: u64 },

    #[error("{what} exceeds the limit of {limit}")]
    LimitExceeded { what: String, limit: u64 },

    #[error("claimed generator #{index} {reason}")]
    BadGenerator { index: usize, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
