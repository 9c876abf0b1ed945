use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: invalid JSON: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Domain(#[from] morita_core::Error),
}

impl CliError {
    /// `2` for I/O and parse problems, `1` for semantic ones.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            _ => 2,
        }
    }

    pub fn schema(msg: impl Into<String>) -> Self {
        CliError::Schema(msg.into())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
