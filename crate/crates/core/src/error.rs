use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain size must be at least 1")]
    EmptyDomain,
    #[error("arity must be at least 1")]
    ZeroArity,
    #[error("element {value} is out of range for a domain of size {n}")]
    ElementOutOfRange { value: usize, n: usize },
    #[error("expected arity {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("domain sizes differ: {left} vs {right}")]
    DomainMismatch { left: usize, right: usize },
    #[error("table has {found} entries, expected {expected}")]
    TableLength { expected: usize, found: usize },
    #[error("{n}^{arity} does not fit in memory")]
    TooLarge { n: usize, arity: usize },
    #[error("enumeration needs 2^{needed:.1} candidates, budget allows 2^{allowed:.1}")]
    BudgetExceeded { needed: f64, allowed: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("no witness found: {0}")]
    NoWitness(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn params(msg: impl Into<String>) -> Self {
        Error::InvalidParameters(msg.into())
    }
}
