use thiserror::Error;

/// Errors produced by the subsequence routines, generators and profilers.
#[derive(Debug, Error)]
pub enum McsError {
    #[error("a string set needs at least one string")]
    EmptyStringSet,

    #[error("`{subsequence}` is not a subsequence of string #{string_index}")]
    NotCommon { subsequence: String, string_index: usize },

    #[error("`{subsequence}` is not a subsequence of `{string}`")]
    NotSubsequence { subsequence: String, string: String },

    #[error("breakpoint index {k} is out of range for a subsequence of length {len}")]
    IndexOutOfRange { k: usize, len: usize },

    #[error("{name} must lie strictly between 0 and 1, got {value}")]
    InvalidProbability { name: &'static str, value: f64 },

    /// Input too large for an exhaustive routine.
    #[error("{what}: {estimate} exceeds the limit of {limit}")]
    GuardExceeded {
        what: &'static str,
        estimate: u128,
        limit: u128,
    },

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("column `{0}` has no values")]
    EmptyColumn(String),

    #[error("no column named `{0}`")]
    UnknownColumn(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = McsError> = std::result::Result<T, E>;
