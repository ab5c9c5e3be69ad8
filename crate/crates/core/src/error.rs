use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function has a zero denominator")]
    ZeroDenominator,
    #[error("pole at X=0: denominator has zero constant term")]
    PoleAtZero,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no Waldspurger model exists: {0}")]
    NoModel(String),
    #[error("outside supported scope: {0}")]
    Scope(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("missing local data for primes {0:?}")]
    MissingPrimes(Vec<u64>),
    #[error("configuration is invalid: {0:?}")]
    Validation(Vec<String>),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
