use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("q-factorial of negative integer {0}")]
    NegativeFactorial(i64),
    #[error("cannot evaluate at q = 0")]
    EvalAtZero,
    #[error("pole at q = {0}")]
    Pole(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("operator is not nilpotent within {0} powers")]
    NotNilpotent(usize),
    #[error("weight {weight} is not dominant: {reason}")]
    NotDominant { weight: String, reason: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("module construction exceeded its limit: {0}")]
    Limit(String),
    #[error("rewrite step cap {0} exceeded")]
    RewriteCap(usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
