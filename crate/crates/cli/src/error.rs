use std::path::PathBuf;

use warpgeo_core::Error as CoreError;

/// Failures of a command, each mapped to a stable exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write output: {0}")]
    Write(#[from] std::io::Error),
    #[error("malformed geometry file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("{check} does not apply to {what}")]
    Unsupported { check: &'static str, what: String },
}

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_EVAL: u8 = 3;
pub const EXIT_GEOMETRY: u8 = 4;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                CoreError::Parse(_) | CoreError::OutOfRange { .. } => EXIT_PARSE,
                CoreError::Eval(_) | CoreError::Numerics(_) => EXIT_EVAL,
                CoreError::Geometry(_) => EXIT_GEOMETRY,
                CoreError::Hypothesis(_) => EXIT_FAIL,
            },
            CliError::Usage(_) | CliError::Read { .. } | CliError::Json(_) => EXIT_PARSE,
            CliError::Write(_) | CliError::Csv(_) => EXIT_EVAL,
            CliError::Unsupported { .. } => EXIT_GEOMETRY,
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
