//! Experiment runner and one-shot evaluator built on `transforms-core`.

pub mod cache;
pub mod config;
pub mod eval;
pub mod experiments;
pub mod plot;
pub mod registry;

pub use config::{ExperimentConfig, ExperimentKind};
pub use experiments::{run, run_eval, RunContext, Table};
