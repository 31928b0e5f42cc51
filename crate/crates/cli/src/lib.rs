//! Command-line experiment runner for the `curveflow` library.
//!
//! The binary has three subcommands: `run` evolves a curve and checks the
//! bounds along the way, `verify-profile` certifies the comparison profile
//! on a grid, and `tbar` prints the comparison offset of a shape.

pub mod checks;
pub mod config;
pub mod experiment;
pub mod output;
pub mod profile;

use thiserror::Error;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Pass,
    CheckFailure,
    Usage,
    Runtime,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Pass => 0,
            ExitStatus::CheckFailure => 1,
            ExitStatus::Usage => 2,
            ExitStatus::Runtime => 3,
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot parse configuration: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot write results: {0}")]
    Io(#[from] std::io::Error),
}

impl RunError {
    pub fn exit_status(&self) -> ExitStatus {
        match self {
            RunError::Config(_) => ExitStatus::Usage,
            RunError::Io(_) => ExitStatus::Runtime,
        }
    }
}
