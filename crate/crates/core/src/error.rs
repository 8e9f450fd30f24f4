use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero inverse")]
    ZeroInverse,

    #[error("invalid Galois index {k} for conductor {conductor}")]
    InvalidGaloisIndex { k: i64, conductor: u64 },

    #[error("not p-integral: {0}")]
    NotPIntegral(String),

    #[error("valuation of zero")]
    ValuationOfZero,

    #[error("valuation precision exhausted at p^{0} (implementation bug)")]
    PrecisionExhausted(u32),

    #[error("{0}")]
    Arithmetic(String),

    /// Malformed CTJ syntax or structure.
    #[error("parse error: {0}")]
    Parse(String),

    /// A well-formed table that violates a character-table invariant.
    #[error("validation failed: {0}")]
    Validation(String),

    #[error("table inconsistent: {0}")]
    TableInconsistent(String),

    #[error("non-integral elementary divisor: {0}")]
    NonIntegralDivisor(String),

    #[error("inconsistent census: {0}")]
    InconsistentCensus(String),

    #[error("splitting search exhausted for block {0}")]
    SplittingExhausted(usize),

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
