use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("series expansion point is a pole: {0}")]
    PoleAtExpansionPoint(String),

    #[error("insufficient truncation: coefficient of exponent {needed} requested, series known below {known}")]
    InsufficientTruncation { needed: i32, known: i32 },

    #[error("invalid parameters: {0}")]
    Domain(String),

    #[error("normalization error: {0}")]
    Normalization(String),

    #[error("internal consistency error: {0}")]
    InternalConsistency(String),

    #[error("missing dependency: {0}")]
    Dependency(String),

    #[error("cache file error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
