use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error)]
pub enum GamaError {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, GamaError>;

pub(crate) fn check_dim(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(GamaError::DimensionMismatch { expected, actual })
    }
}
