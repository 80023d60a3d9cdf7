use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("part at index {index} is not positive")]
    NonPositivePart { index: usize },
    #[error("part at index {index} exceeds the part before it")]
    Increasing { index: usize },
    #[error("cannot parse part {index} ({token:?}) as an integer")]
    Syntax { index: usize, token: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("modulus t must be at least 2, got {0}")]
    Modulus(usize),
    #[error("core {0} is not a {1}-core")]
    NotACore(String, usize),
    #[error("quotient has {got} components, expected {expected}")]
    QuotientArity { expected: usize, got: usize },
    #[error("tower row {j} for t = {t} has more entries than can be materialized")]
    RowTooWide { t: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("divisor has constant term {0}, expected ±1")]
    NonUnitConstant(String),
    #[error("substitution power must be positive")]
    ZeroPower,
    #[error("malformed series: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("{base}^{exp} overflows the exponent range")]
    ExponentOverflow { base: usize, exp: u32 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
