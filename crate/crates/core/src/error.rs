//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by corpus handling, training, evaluation, and reporting.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("line {line}: {msg}")]
    MalformedLine { line: usize, msg: String },

    #[error("duplicate document id `{0}`")]
    DuplicateId(String),

    #[error("document `{id}`: {msg}")]
    InvalidDocument { id: String, msg: String },

    #[error("unknown country code `{0}`")]
    UnknownCountry(String),

    #[error("document `{id}` has no country for attribution rule {rule}")]
    MissingCountry { id: String, rule: &'static str },

    #[error("test fraction must lie strictly between 0 and 1, got {0}")]
    InvalidFraction(f64),

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("prompt set error: {0}")]
    InvalidPrompt(String),

    #[error("polish backend failure (retryable: {retryable}): {msg}")]
    Backend { msg: String, retryable: bool },

    #[error("vocabulary is empty after applying min_df")]
    EmptyVocabulary,

    #[error("training labels contain a single class")]
    SingleClass,

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("model file error: {0}")]
    ModelFormat(String),

    #[error("regression error: {0}")]
    Regression(String),

    #[error("invalid argument: {0}")]
    InvalidArg(String),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
