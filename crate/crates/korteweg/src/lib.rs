//! Experiment driver for the nematic Korteweg acoustics toolkit: TOML run
//! configurations, the `korteweg` command set and the CSV/PGM writers.

pub mod commands;
pub mod config;
pub mod output;

pub use korteweg_core as core;

use std::fmt;

/// Failure of a command, split by exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(#[from] korteweg_core::Error),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: std::path::PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn config(msg: impl fmt::Display) -> Self {
        Self::Config(msg.to_string())
    }

    /// 1 for configuration errors, 2 for numerical failures and I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 1,
            Self::Numerical(_) | Self::Io { .. } => 2,
        }
    }
}
