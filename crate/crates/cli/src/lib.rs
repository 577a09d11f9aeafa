//! Front end for `monopole-core`: argument handling, the three commands and report output.

pub mod commands;
pub mod config;
pub mod report;

use thiserror::Error;

pub use config::{Cli, Command, Format, RunConfig, Suite};
pub use report::{Bound, Check, Report};

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or quantum numbers; exit code 2.
    #[error("{0}")]
    Config(String),
    #[error("output: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// Builds the report for a validated configuration.
pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    match cfg.command {
        Command::Enumerate => commands::enumerate::run(cfg),
        Command::Verify => commands::verify::run(cfg),
        Command::Radial => commands::radial::run(cfg),
    }
}
