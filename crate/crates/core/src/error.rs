use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {requested} exceeds the cell budget of {budget}")]
    Capacity { requested: i64, budget: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a chain complex: d∘d is non-zero at degree {degree}")]
    NotAComplex { degree: i64 },

    #[error("not a chain map: the square at degree {degree} does not commute")]
    NotAChainMap { degree: i64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A computed result contradicts a theorem the code relies on.
    /// Always an implementation bug, never a discovery.
    #[error("verification failed: {0}")]
    Falsified(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn is_falsification(&self) -> bool {
        matches!(self, Error::Falsified(_))
    }
}
