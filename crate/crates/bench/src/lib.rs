//! Benchmark harness for the rips-core constructions: seeded Erdős–Rényi
//! grids over (p, max dimension), per-cell timing and counter statistics,
//! and table rendering in the rows-by-p, columns-by-dimension layout.

pub mod experiment;
pub mod report;

pub use experiment::{
    run_experiment, Algorithm, BenchError, CellResult, ExperimentConfig, ExperimentReport,
    OutputFormat, TrialRecord,
};
pub use report::{emit_table, trial_stats_csv};
