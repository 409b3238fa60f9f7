use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error(
        "power iteration did not converge after {iterations} iterations \
         (best estimate {estimate}, residual {residual:e})"
    )]
    Convergence {
        estimate: f64,
        residual: f64,
        iterations: usize,
    },

    #[error("target partition is not reachable by transformations")]
    NotReachable,

    #[error("exhaustive search refused: {0}")]
    Refused(String),

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
