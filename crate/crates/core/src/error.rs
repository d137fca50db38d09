use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by parsing, preprocessing and network construction.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed tabular input (ragged rows, unparseable cells).
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Input does not follow the expected series-matrix framing.
    #[error("format error: {0}")]
    Format(String),

    /// Sample/label bookkeeping problems (missing or duplicate labels).
    #[error("label error: {0}")]
    Label(String),

    /// Class structure problems (wrong class count, classes too small).
    #[error("class error: {0}")]
    Class(String),

    /// A stage produced nothing to work with downstream.
    #[error("empty result: {0}")]
    Empty(String),

    /// Vector or matrix dimensions do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A value or parameter is outside the mathematically valid range.
    #[error("domain error: {0}")]
    Domain(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
