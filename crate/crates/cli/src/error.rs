use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Csv { line: u64, message: String },

    #[error("line {line}: `{cell}` is not a finite number")]
    Parse { line: u64, cell: String },

    #[error("line {line}: time {t} does not increase past {previous}")]
    Ordering { line: u64, previous: f64, t: f64 },

    #[error("input has no data rows")]
    EmptyInput,

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] sawtooth_core::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    CsvWrite(#[from] csv::Error),

    #[error(transparent)]
    Write(#[from] std::io::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }
}
