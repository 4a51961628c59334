use thiserror::Error;

/// Errors surfaced by the library. The CLI maps these onto exit codes
/// (validation → 2, capacity → 3, numerical/invariant → 4).
#[derive(Debug, Error)]
pub enum AnnealError {
    /// Inputs violate a precondition (parity, sign, range, degeneracy).
    #[error("validation: {0}")]
    Validation(String),
    /// The request exceeds a hard size cap of the dense/enumeration paths.
    #[error("capacity: {0}")]
    Capacity(String),
    /// A numerical guarantee broke at runtime (norm drift, step underflow).
    #[error("numerical: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, AnnealError>;

pub(crate) fn validation<T>(msg: impl Into<String>) -> Result<T> {
    Err(AnnealError::Validation(msg.into()))
}

pub(crate) fn capacity<T>(msg: impl Into<String>) -> Result<T> {
    Err(AnnealError::Capacity(msg.into()))
}
