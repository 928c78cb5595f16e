//! Configuration, orchestration and output writing for the WENO benchmark CLI.

pub mod commands;
pub mod config;
pub mod output;

use thiserror::Error;

pub use commands::{compare, converge, convergence_suite, execute, run, CompareReport, ConvergenceReport, RunReport};
pub use config::{Mode, Overrides, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical abort: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    /// Process exit code: 2 for configuration, 3 for numerical aborts.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<weno_core::Error> for CliError {
    fn from(e: weno_core::Error) -> Self {
        use weno_core::Error as E;
        match e {
            E::Config(c) => CliError::Config(c.to_string()),
            E::Kernel(k) => CliError::Config(k.to_string()),
            E::NanAbort(n) => CliError::Numerical(n.to_string()),
            E::Physics(p) => CliError::Numerical(p.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
