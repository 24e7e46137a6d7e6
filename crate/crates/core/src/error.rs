use thiserror::Error;

/// Errors raised by constructions, reductions and exact searches.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    InvalidDegree(u32),
    #[error("field order {p}^{m} exceeds the 2^16 cap")]
    OrderOverflow { p: u64, m: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("enumeration budget exceeded: need {needed}, cap {cap}")]
    BudgetExceeded { needed: u128, cap: u128 },
    #[error("size overflow: {0}")]
    SizeOverflow(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not certified: {0}")]
    NotCertified(String),
    #[error("degenerate instance: {0}")]
    Degenerate(String),
    #[error("vector is not a member of the lattice or subspace: {0}")]
    NotAMember(String),
    #[error("parameters too tight: {0}")]
    ParametersTooTight(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
