//! Concatenated codes whose outer code is an expander code with
//! generalized Reed–Solomon constituents, together with the channel model,
//! baseline codes, closed-form exponent analysis and a simulation harness.

pub mod algebra;
pub mod analysis;
pub mod bz_baseline;
pub mod channel;
pub mod concat;
pub mod expander;
pub mod graph;
pub mod harness;
pub mod ops;

/// Any error raised by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
    #[error(transparent)]
    Graph(#[from] graph::GraphError),
    #[error(transparent)]
    Expander(#[from] expander::ExpanderError),
    #[error(transparent)]
    Concat(#[from] concat::ConcatError),
    #[error(transparent)]
    Channel(#[from] channel::ChannelError),
    #[error(transparent)]
    Analysis(#[from] analysis::AnalysisError),
    #[error(transparent)]
    Baseline(#[from] bz_baseline::BzError),
    #[error(transparent)]
    Harness(#[from] harness::HarnessError),
}
