//! Monte Carlo simulation, operation-count probes, JSON presets and the
//! command-line front end.

pub mod cli;
pub mod monte_carlo;
pub mod presets;
pub mod probe;

pub use monte_carlo::{monte_carlo, wilson_interval, ErrorEstimate, TrialPlan};
pub use presets::{ConcatPreset, InnerPreset, OuterPreset};
pub use probe::{linear_fit, LinearFit, ProbePoint, ProbeReport};

use crate::algebra::AlgebraError;
use crate::analysis::AnalysisError;
use crate::bz_baseline::BzError;
use crate::channel::ChannelError;
use crate::concat::ConcatError;
use crate::expander::ExpanderError;
use crate::graph::GraphError;

/// Version of every JSON document the CLI writes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("{0}")]
    Usage(String),
    #[error("trial count must be at least 1")]
    NoTrials,
    #[error("need at least {needed} data points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },
    #[error("invalid preset: {0}")]
    Preset(String),
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Expander(#[from] ExpanderError),
    #[error(transparent)]
    Concat(#[from] ConcatError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Baseline(#[from] BzError),
}
