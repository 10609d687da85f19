use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input is empty")]
    Empty,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("{what} needs at least {needed} values, got {got}")]
    TooFew {
        what: &'static str,
        needed: usize,
        got: usize,
    },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    /// Zero-variance input where a spread is required (constant axis, constant signal).
    #[error("degenerate data: {0} has zero variance")]
    Degenerate(&'static str),

    #[error("columns are rank deficient after centering; draw again with a different seed")]
    RankDeficient,

    #[error("{name} must lie in {range}, got {value}")]
    OutOfRange {
        name: &'static str,
        range: &'static str,
        value: f64,
    },

    #[error("degenerate weights: {0}")]
    DegenerateWeights(String),

    #[error("subject {subject:?} has {got} replicate(s) for method {method}; at least 2 are needed")]
    TooFewReplicates {
        subject: String,
        method: String,
        got: usize,
    },

    #[error("duplicate key {0}")]
    Duplicate(String),

    #[error("subject {subject:?} has no measurements for method {method}")]
    MissingMethod { subject: String, method: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("invalid report: {0}")]
    Report(#[from] serde_json::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Whether the failure is numerical rather than a problem with the input's shape.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Degenerate(_) | Error::RankDeficient)
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
