use thiserror::Error;

#[derive(Debug, Error)]
pub enum PfcError {
    #[error("parse error at {field}: {message}")]
    Parse { field: String, message: String },

    #[error("unknown agent {0}")]
    UnknownAgent(String),

    #[error("unknown project {0}")]
    UnknownProject(String),

    #[error("invalid outcome: {0}")]
    InvalidOutcome(String),

    #[error("{what} = {size} exceeds enumeration cap {cap}")]
    Capacity { what: &'static str, size: usize, cap: usize },

    #[error("time budget exceeded")]
    Timeout,

    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl PfcError {
    pub fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        PfcError::Parse { field: field.into(), message: message.into() }
    }
}

pub type Result<T, E = PfcError> = std::result::Result<T, E>;
