use thiserror::Error;

/// Errors raised by the library.
///
/// `Input` marks bad data handed in by a caller (invalid index, mismatched
/// parents, malformed file). `Internal` marks a broken invariant inside the
/// library itself; seeing one is always a bug worth reporting.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn internal_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}
