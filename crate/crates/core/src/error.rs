use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,

    #[error("alphabet symbols must be non-empty and strictly increasing")]
    InvalidAlphabet,

    #[error("not a permutation of the alphabet")]
    NotAPermutation,

    #[error("symbol outside alphabet: byte {0}")]
    SymbolOutsideAlphabet(u8),

    #[error("alphabet too large for exhaustive search: sigma {sigma} exceeds limit {limit}")]
    AlphabetTooLarge { sigma: usize, limit: usize },

    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("malformed summary: {0}")]
    MalformedSummary(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit status for the CLI: 1 usage, 2 data, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::AlphabetTooLarge { .. } => 1,
            Error::Io { .. } => 3,
            _ => 2,
        }
    }
}
