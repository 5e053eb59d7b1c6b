//! Library side of the `relheat` command-line tool.
//!
//! [`run`] executes one parsed command. Errors come back as [`CliError`],
//! which `main` maps to exit status 2 (usage) or 1 (numerical failure or a
//! failed verification).

pub mod config;
mod evolve;
mod expand;
mod output;
mod poly;
pub mod verify;

use thiserror::Error;

pub use config::{Cli, Command, Params};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numerical(#[from] anyhow::Error),
    #[error("{failed} of {total} checks failed")]
    ChecksFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) | CliError::ChecksFailed { .. } => 1,
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let (kind, flags) = cli.command.split();
    let params = match &cli.config {
        Some(path) => flags.merged_over(config::load_config(path)?),
        None => flags,
    };
    match kind {
        config::CommandKind::Poly => poly::run(&params),
        config::CommandKind::Verify => verify::run(&params),
        config::CommandKind::Evolve => evolve::run(&params),
        config::CommandKind::Figures => evolve::figures(&params),
        config::CommandKind::Expand => expand::run(&params),
    }
}
