use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by model evaluation, fitting and optimizer configuration.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid frequency grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("frequency {frequency_hz} Hz lies outside the tabulated band [{min_hz}, {max_hz}] Hz")]
    OutOfRange {
        frequency_hz: f64,
        min_hz: f64,
        max_hz: f64,
    },

    #[error("invalid raw data: {0}")]
    InvalidData(String),

    #[error("singular weight system ({0} unknowns)")]
    SingularSystem(usize),

    #[error("optimizer configuration: {0}")]
    Config(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed CSV in {path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
