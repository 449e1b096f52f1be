use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid mismatch: {left} vs {right}")]
    GridMismatch { left: usize, right: usize },
    #[error("spectral field is not Hermitian (max asymmetry {0:e})")]
    NonHermitian(f64),
    #[error("non-finite sample in field")]
    NonFinite,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("vector field is not divergence-free (max |k·û| = {0:e})")]
    NotDivergenceFree(f64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid config key `{key}`: {message}")]
    Config { key: String, message: String },
    #[error("checkpoint format: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
