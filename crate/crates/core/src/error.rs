use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid UTF-8 at byte offset {offset}")]
    Encoding { offset: usize },

    #[error("{table}:{line}: {message}")]
    RuleParse {
        table: String,
        line: usize,
        message: String,
    },

    #[error("{second_table}:{second}: repeats the source and scope of {first_table}:{first}")]
    RuleConflict {
        first_table: String,
        first: usize,
        second_table: String,
        second: usize,
    },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("cannot train on an empty corpus")]
    EmptyCorpus,

    #[error("vocab_size {requested} is too small; the minimum for this corpus is {minimum}")]
    VocabTooSmall { requested: usize, minimum: usize },

    #[error("vocabulary line {line}: {message}")]
    VocabFormat { line: usize, message: String },

    #[error("duplicate token {token:?} at lines {first} and {second}")]
    DuplicateToken {
        token: String,
        first: usize,
        second: usize,
    },

    #[error("{path}: line {line}: {message}")]
    CorpusFormat {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("reports describe different corpora: before {before}, after {after}")]
    DigestMismatch { before: String, after: String },

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("metadata: {0}")]
    Metadata(#[from] serde_json::Error),
}

impl Error {
    /// The innermost error, unwrapping stage context.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn from_utf8(err: &std::str::Utf8Error) -> Self {
        Error::Encoding {
            offset: err.valid_up_to(),
        }
    }
}
