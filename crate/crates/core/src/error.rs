use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An index or parameter outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A model that does not satisfy the formula it was produced for.
    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("invalid scheme: {0}")]
    InvalidScheme(String),

    #[error("external solver: {0}")]
    External(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
