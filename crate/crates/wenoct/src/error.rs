use thiserror::Error;

/// Errors surfaced by the solver library.
#[derive(Debug, Error)]
pub enum SolverError {
    #[error("invalid state at {location}: {reason}")]
    InvalidState { location: String, reason: String },

    #[error("positivity failure at {location}: {reason}")]
    Positivity { location: String, reason: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, SolverError>;

impl SolverError {
    pub fn config(msg: impl Into<String>) -> Self {
        SolverError::Config(msg.into())
    }
}
