//! Experiment frontend for the `warpspec` solvers: flat `key = value`
//! configs in, CSV artifacts out, plus the full verification suite behind
//! the `verify` command.

pub mod acceptance;
pub mod commands;
pub mod config;
pub mod oracles;

use std::fmt;

/// Failure classes mapped onto process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable config, or schema violations (exit 1).
    Validation(Vec<String>),
    /// A solver or I/O failure while executing a valid config (exit 2).
    Run(String),
    /// The verification suite ran but at least one criterion failed (exit 3).
    VerifyFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Run(_) => 2,
            CliError::VerifyFailed(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(errors) => {
                writeln!(f, "configuration invalid ({} error(s)):", errors.len())?;
                for e in errors {
                    writeln!(f, "  - {e}")?;
                }
                Ok(())
            }
            CliError::Run(msg) => write!(f, "{msg}"),
            CliError::VerifyFailed(n) => write!(f, "{n} acceptance criterion(s) failed"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Run(format!("i/o error: {e}"))
    }
}
