// SPDX-License-Identifier: Apache-2.0

use std::fmt;

/// Failure of a command, carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or invalid input (exit 2).
    Input(String),
    /// No admissible cover exists (exit 3).
    Infeasible(String),
    /// Too few points for the request (exit 4).
    Insufficient(String),
    /// An internal cross-check failed (exit 5).
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Insufficient(_) => 4,
            CliError::Internal(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Infeasible(m) => write!(f, "infeasible: {m}"),
            CliError::Insufficient(m) => write!(f, "insufficient data: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<mdkit::Error> for CliError {
    fn from(e: mdkit::Error) -> Self {
        match e {
            mdkit::Error::NoPair => CliError::Insufficient(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
