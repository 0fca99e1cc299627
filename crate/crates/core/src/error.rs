use thiserror::Error;

/// Raised by propagators when some domain would become empty.
#[derive(Debug, Clone, Copy, Error, PartialEq, Eq, Hash)]
#[error("inconsistency")]
pub struct Inconsistency;

pub type PropResult<T> = Result<T, Inconsistency>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("symmetry group exceeds the cap of {0} elements")]
    GroupTooLarge(usize),
    #[error("enumeration budget of {0} exceeded")]
    BudgetExceeded(u64),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("mode `{mode}` cannot be used here: {reason}")]
    UnsupportedMode { mode: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
