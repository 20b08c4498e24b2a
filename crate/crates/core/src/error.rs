use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid sign string: {0}")]
    InvalidSigns(String),

    #[error("sign string has {found_plus} pluses and {found_minus} minuses, expected {plus} and {minus}")]
    SignCount {
        plus: usize,
        minus: usize,
        found_plus: usize,
        found_minus: usize,
    },

    #[error("partition {partition} does not fit in a {rows}x{cols} box")]
    DoesNotFit {
        partition: String,
        rows: usize,
        cols: usize,
    },

    #[error("parameter constraint violated: {0}")]
    Constraint(String),

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("truncation infeasible: {0}")]
    Truncation(String),

    #[error("corrupt sequence: {0}")]
    CorruptSequence(String),

    #[error("domain too large for exact enumeration: {0}")]
    DomainTooLarge(String),

    #[error("point outside the domain: {0}")]
    OutOfDomain(String),

    #[error("no admissible contours: {0}")]
    InfeasibleContours(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("chi-square test: {0}")]
    ChiSquare(String),

    #[error("inconsistent state: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
