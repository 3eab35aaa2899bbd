use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A frame geometry the transforms cannot build a tight frame for.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unsupported audio format: {0}")]
    UnsupportedFormat(String),

    /// An iterate became non-finite.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("no trace recorded; enable trace metrics in the solver config")]
    TraceDisabled,

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error("wav: {0}")]
    Wav(#[from] hound::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
