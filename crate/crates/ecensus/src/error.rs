use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("invalid discriminant {0}: need D < 0 with D = 0 or 1 mod 4")]
    InvalidDiscriminant(i64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
