//! File formats, reports and the command-line front end over `hyperphi-core`.

pub mod cli;
pub mod io;
pub mod report;

use hyperphi_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    /// 2 for usage, parse and io problems, 3 for budget and size limits.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::BudgetExceeded { .. } | Error::Overflow { .. }) => 3,
            _ => 2,
        }
    }
}
