//! Front end for `nfc-core`: spec files, the expression language, and the
//! commands behind the `nfc` binary.

pub mod args;
pub mod commands;
pub mod expr;
pub mod report;
pub mod spec;

use std::fmt;

pub use args::Cli;
pub use commands::run;
pub use report::{Outcome, Report};

/// Exit status 2 for usage and parse errors, 1 for domain errors.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(nfc_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<nfc_core::Error> for CliError {
    fn from(e: nfc_core::Error) -> Self {
        CliError::Domain(e)
    }
}
