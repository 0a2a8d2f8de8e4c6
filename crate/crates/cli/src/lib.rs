//! Library behind the `fieldvision` binary: command implementations are
//! plain functions so tests can drive them directly.

pub mod commands;
pub mod config;
pub mod records;
pub mod report;
pub mod score;

use thiserror::Error;

/// Top-level command failure, mapped onto process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    /// Exit code 2.
    #[error("invalid config: {0}")]
    Config(String),
    /// Exit code 3.
    #[error("invalid stream: {0}")]
    Stream(String),
    /// Exit code 4.
    #[error("runtime failure: {0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Stream(_) => 3,
            CliError::Runtime(_) => 4,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
