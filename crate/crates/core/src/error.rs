use thiserror::Error;

/// Errors raised by the domain operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero is not a positive integer")]
    Zero,
    #[error("not divisible")]
    NotDivisible,
    #[error("not a unit: gcd({0}, {1}) != 1")]
    NotUnit(u64, u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arithmetic overflow while evaluating {0}")]
    Overflow(&'static str),
    #[error("empty set of element orders")]
    EmptyMu,
    #[error("inconsistent vertex set: {0}")]
    InconsistentVertexSet(String),
    #[error("exhaustive search cap exceeded: {found} > {cap}")]
    CapExceeded { found: usize, cap: usize },
    #[error("lemma precondition violated: {0}")]
    LemmaPrecondition(String),
    #[error("catalog error: {0}")]
    Catalog(String),
    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
