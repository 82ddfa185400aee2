use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("non-homogeneous polynomial: {0}")]
    NonHomogeneous(String),

    #[error("truncation insufficient: {0}")]
    Truncation(String),

    #[error("window error: {0}")]
    Window(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("Betti table requires a minimal complex")]
    NotMinimal,

    #[error("not a chain map: {0}")]
    NotChainMap(String),

    #[error("inconsistent system: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
