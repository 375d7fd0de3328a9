//! Experiment driver: instance families, end-to-end trials and JSON reports.

pub mod config;
pub mod document;
pub mod experiment;
pub mod instance;

use thiserror::Error;

pub use config::{ExperimentConfig, Family, HostMode};
pub use experiment::{run_experiment, run_trial, ExperimentReport, TrialReport};
pub use instance::{generate_instance, Instance, Witness};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] twr_core::io::ParseError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] twr_core::GraphError),
    #[error(transparent)]
    Separator(#[from] twr_core::separator::SeparatorError),
    #[error(transparent)]
    Structure(#[from] twr_core::structure::StructureError),
    #[error(transparent)]
    Ramsey(#[from] twr_ramsey::RamseyError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    /// 2 for bad input, 1 for everything that failed after the input was accepted.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Usage(_) | HarnessError::Parse(_) | HarnessError::Json(_) | HarnessError::Graph(_) | HarnessError::Io(_) => 2,
            _ => 1,
        }
    }
}
