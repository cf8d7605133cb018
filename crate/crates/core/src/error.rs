use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid value {value:?} for feature {feature}")]
    Validation { feature: String, value: String },

    #[error("invalid example: {0}")]
    InvalidExample(String),

    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),

    #[error("unknown feature set {name:?}; valid names: {}", valid.join(", "))]
    UnknownFeatureSet { name: String, valid: Vec<String> },

    #[error("cannot fit model: {0}")]
    Fit(String),

    #[error("unmapped case: {0}")]
    UnmappedCase(String),

    #[error("invalid synthetic spec: {0}")]
    Spec(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("invalid experiment configuration: {0}")]
    Config(String),

    #[error("undefined input: {0}")]
    UndefinedInput(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error("model file: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 2,
            Error::Parse { .. }
            | Error::Validation { .. }
            | Error::InvalidExample(_)
            | Error::SchemaMismatch(_)
            | Error::UnmappedCase(_)
            | Error::Json(_)
            | Error::Csv(_) => 3,
            Error::UnknownFeatureSet { .. }
            | Error::Fit(_)
            | Error::Spec(_)
            | Error::Usage(_)
            | Error::Config(_)
            | Error::UndefinedInput(_) => 1,
        }
    }
}
