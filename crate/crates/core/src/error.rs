use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("coefficient ring mismatch: {0}")]
    RingMismatch(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("simplicial identity violated: {0}")]
    SimplicialIdentity(String),
    #[error("d∘d ≠ 0 in {0}")]
    NotAComplex(String),
    #[error("degree {degree} outside the window [{lo}, {hi}]")]
    OutOfWindow { degree: i64, lo: i64, hi: i64 },
    #[error("{0} is a zero divisor up to the weight bound")]
    ZeroDivisor(String),
    #[error("unsupported shape: {0}")]
    Unsupported(String),
    #[error("insufficient depth: need {needed}, have {available}")]
    InsufficientDepth { needed: usize, available: usize },
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("enumeration bound exceeded: {0}")]
    EnumerationBound(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
