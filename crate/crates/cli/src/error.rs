use std::path::PathBuf;

use thiserror::Error;

/// A malformed hashtag command. Positions count the fields after the colon,
/// starting at 1.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("expected a `#command:` line")]
    NotACommand,

    #[error("unknown command `#{0}`")]
    UnknownCommand(String),

    #[error("missing field at position {position} ({field})")]
    MissingField { position: usize, field: String },

    #[error("unexpected extra token at position {position}: {token:?}")]
    ExtraToken { position: usize, token: String },

    #[error("field at position {position} ({field}) is not a number: {token:?}")]
    NotNumeric {
        position: usize,
        field: String,
        token: String,
    },

    #[error("field at position {position} ({field}) out of range: {reason}")]
    OutOfRange {
        position: usize,
        field: String,
        reason: String,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Fit(#[from] debyefit::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// Process exit status: 1 for parse/config problems, 2 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io { .. } => 2,
            Self::Fit(debyefit::Error::Io { .. } | debyefit::Error::Csv { .. }) => 2,
            _ => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }
}
