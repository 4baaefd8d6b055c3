use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u32),
    #[error("unsupported modulus: {0}")]
    UnsupportedModulus(String),
    #[error("function table has {got} entries, expected {expected}")]
    IncompleteTable { expected: usize, got: usize },
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("phase is not a power of omega: {0}")]
    PhaseDomain(String),
    #[error("{value} is not a unit modulo {d}")]
    NotUnit { value: u32, d: u32 },
    #[error("matrix is not symplectic modulo {0}")]
    NotSymplectic(u32),
    #[error("observable is not a valid measurement: {0}")]
    InvalidObservable(String),
    #[error("state cannot be represented exactly in sparse form: {0}")]
    NotSparseRepresentable(String),
    #[error("dense backend inconsistency: {0}")]
    Inconsistency(String),
    #[error("plan is not deterministic: {0}")]
    NonDeterministic(String),
    #[error("temporal graph has a cycle through party {0}")]
    Cycle(usize),
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("verification failed at input {input:?}: expected {expected}, got {got}")]
    VerificationFailed {
        input: Vec<u32>,
        expected: u32,
        got: u32,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
