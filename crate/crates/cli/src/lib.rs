//! Command-line surface over `rigidity-core`: scenario loading, the `genus`,
//! `equivariant`, `verify` and `replay` commands, and JSON/CSV reports.

pub mod commands;
pub mod report;
pub mod scenario;
pub mod suites;

use std::fmt;

/// Errors that stop a command before it produces a report.
#[derive(Clone, Debug, PartialEq)]
pub enum CliError {
    /// Unreadable or malformed input. Exit code 2.
    Parse(String),
    /// A well-formed request outside the domain of the computation. Exit code 3.
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) | CliError::Precondition(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<rigidity_core::Error> for CliError {
    fn from(e: rigidity_core::Error) -> Self {
        use rigidity_core::Error as E;
        match e {
            E::Precondition(_) | E::Overflow(_) => CliError::Precondition(e.to_string()),
            E::Invalid(_) | E::Inconsistent(_) => CliError::Parse(e.to_string()),
        }
    }
}

/// Reads a scenario argument: inline JSON when it starts with `{`, otherwise a file path.
pub fn read_input(arg: &str) -> Result<String, CliError> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| CliError::Parse(format!("cannot read {arg}: {e}")))
}
