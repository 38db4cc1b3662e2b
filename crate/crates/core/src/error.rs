use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("discrete logarithm of zero")]
    LogOfZero,
    #[error("index {index} out of range for {count} monic polynomials")]
    IndexOutOfRange { index: u64, count: u64 },
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial is reducible")]
    Reducible,
    #[error("cyclotomic ring mismatch: {0} vs {1}")]
    RingMismatch(u64, u64),
    #[error("polynomials are not coprime")]
    NotCoprime,
    #[error("pole of the rational argument shares a factor with the modulus")]
    PoleClash,
    #[error("enumeration of {needed} terms exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
