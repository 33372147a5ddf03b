//! The benchmark protocol: a grid of (p, max dimension) cells, each measured
//! over a fixed number of seeded random graphs.
//!
//! Within a cell, trial t uses the graph G(n, p, seed + t), and every
//! selected algorithm consumes that same graph, so the comparison isolates
//! the algorithms from the inputs. Wall time covers construction only,
//! measured per trial on the monotonic clock after one untimed warm-up run
//! per cell. Counters and f-vectors are deterministic for a fixed config;
//! only the times vary between reruns.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use thiserror::Error;

use rips_core::{
    incremental_vr_budgeted, inductive_vr_budgeted, new_vr_budgeted, parallel_incremental_vr_budgeted,
    parallel_new_vr_budgeted, ComparisonCounters, ConstructionError, Graph, GraphError, MaxDim,
    Simplex, SimplexTree,
};

/// The constructions the harness can race.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    New,
    Incremental,
    Inductive,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [
        Algorithm::New,
        Algorithm::Incremental,
        Algorithm::Inductive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::New => "new",
            Algorithm::Incremental => "incremental",
            Algorithm::Inductive => "inductive",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Algorithm, String> {
        match s {
            "new" => Ok(Algorithm::New),
            "incremental" => Ok(Algorithm::Incremental),
            "inductive" => Ok(Algorithm::Inductive),
            other => Err(format!(
                "unknown algorithm `{other}` (expected new, incremental or inductive)"
            )),
        }
    }
}

/// Table output flavor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Markdown,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<OutputFormat, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "md" | "markdown" => Ok(OutputFormat::Markdown),
            other => Err(format!("unknown output format `{other}` (expected csv or md)")),
        }
    }
}

/// One full grid specification.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub n: usize,
    pub p_list: Vec<f64>,
    pub dim_list: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub algorithms: Vec<Algorithm>,
    /// Worker threads inside each construction; 1 keeps trials strictly
    /// serial (the clean-timing default).
    pub workers: usize,
    pub node_budget: Option<u64>,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl ExperimentConfig {
    /// A grid with the defaults the tables use: n = 100, 100 trials per
    /// cell, serial runs, markdown output.
    pub fn new(p_list: Vec<f64>, dim_list: Vec<usize>, seed: u64) -> ExperimentConfig {
        ExperimentConfig {
            n: 100,
            p_list,
            dim_list,
            trials: 100,
            seed,
            algorithms: vec![Algorithm::New, Algorithm::Incremental],
            workers: 1,
            node_budget: None,
            output_format: OutputFormat::Markdown,
            output_path: None,
        }
    }

    fn validate(&self) -> Result<(), BenchError> {
        if self.trials < 1 {
            return Err(BenchError::InvalidConfig("trials must be at least 1".into()));
        }
        if self.p_list.is_empty() || self.dim_list.is_empty() {
            return Err(BenchError::InvalidConfig(
                "p and dimension lists must be nonempty".into(),
            ));
        }
        if let Some(&p) = self.p_list.iter().find(|&&p| !(0.0..=1.0).contains(&p)) {
            return Err(BenchError::InvalidConfig(format!(
                "edge probability {p} is outside [0, 1]"
            )));
        }
        if self.algorithms.is_empty() {
            return Err(BenchError::InvalidConfig(
                "at least one algorithm must be selected".into(),
            ));
        }
        if self.workers == 0 {
            return Err(BenchError::InvalidConfig(
                "workers must be resolved to at least 1 before running".into(),
            ));
        }
        Ok(())
    }
}

/// Aggregated measurements for one (p, dim, algorithm) cell. Means cover
/// the successful trials; a cell whose every trial hit the node budget has
/// no data and renders as "No Data Available".
#[derive(Debug, Clone)]
pub struct CellResult {
    pub p: f64,
    pub dim: usize,
    pub algorithm: Algorithm,
    pub trials: usize,
    pub failures: usize,
    pub mean_time_us: f64,
    pub stddev_time_us: f64,
    pub mean_edge_probes: f64,
    pub mean_merge_comparisons: f64,
    pub mean_f_vector: Vec<f64>,
}

impl CellResult {
    pub fn has_data(&self) -> bool {
        self.failures < self.trials
    }
}

/// One timed construction, as written to the per-trial stats file.
#[derive(Debug, Clone)]
pub struct TrialRecord {
    pub trial: usize,
    pub algorithm: Algorithm,
    pub dim: usize,
    pub time_us: f64,
    pub edge_probes: u64,
    pub merge_comparisons: u64,
    pub nodes_created: u64,
}

/// Everything a grid run produces.
#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub cells: Vec<CellResult>,
    pub trial_log: Vec<TrialRecord>,
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("construction failed: {0}")]
    Construction(#[from] ConstructionError),
    #[error(
        "correctness spot-check failed at p = {p}, dim = {dim}: {first} and {second} \
         produced different simplex sets on the designated trial"
    )]
    SpotCheck {
        p: f64,
        dim: usize,
        first: Algorithm,
        second: Algorithm,
    },
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

struct CompletedRun {
    tree: SimplexTree,
    counters: ComparisonCounters,
}

fn run_algorithm(
    algorithm: Algorithm,
    g: &Graph,
    dim: usize,
    workers: usize,
    node_budget: Option<u64>,
) -> Result<CompletedRun, ConstructionError> {
    let d = MaxDim::new(dim);
    match (algorithm, workers) {
        (Algorithm::New, 1) => {
            new_vr_budgeted(g, d, node_budget).map(|(tree, counters)| CompletedRun { tree, counters })
        }
        (Algorithm::New, w) => parallel_new_vr_budgeted(g, d, w, node_budget)
            .map(|(tree, counters)| CompletedRun { tree, counters }),
        (Algorithm::Incremental, 1) => incremental_vr_budgeted(g, d, node_budget)
            .map(|(tree, counters)| CompletedRun { tree, counters }),
        (Algorithm::Incremental, w) => parallel_incremental_vr_budgeted(g, d, w, node_budget)
            .map(|(tree, counters)| CompletedRun { tree, counters }),
        // The level-sweep construction has no parallel form; it always runs
        // serially and carries no kernel counters.
        (Algorithm::Inductive, _) => inductive_vr_budgeted(g, d, node_budget).map(|tree| {
            let mut counters = ComparisonCounters::new();
            counters.nodes_created = tree.node_count() as u64;
            CompletedRun { tree, counters }
        }),
    }
}

/// Runs the full grid. Within each cell every algorithm sees the identical
/// sequence of graphs (seeds `seed + t`); trial 0 doubles as a correctness
/// spot-check across algorithms. Node-budget aborts are recorded per cell
/// and never crash the grid; structural failures do.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, BenchError> {
    cfg.validate()?;
    let mut cells = Vec::new();
    let mut trial_log = Vec::new();

    for &p in &cfg.p_list {
        for &dim in &cfg.dim_list {
            let mut times: Vec<Vec<f64>> = vec![Vec::new(); cfg.algorithms.len()];
            let mut probes: Vec<Vec<u64>> = vec![Vec::new(); cfg.algorithms.len()];
            let mut merges: Vec<Vec<u64>> = vec![Vec::new(); cfg.algorithms.len()];
            let mut f_vectors: Vec<Vec<Vec<usize>>> = vec![Vec::new(); cfg.algorithms.len()];
            let mut failures = vec![0usize; cfg.algorithms.len()];
            let mut spot_sets: Vec<Option<(Algorithm, Vec<Simplex>)>> =
                vec![None; cfg.algorithms.len()];

            // One untimed warm-up per algorithm to settle allocator state.
            let warm_graph = Graph::erdos_renyi(cfg.n, p, cfg.seed)?;
            for &algorithm in &cfg.algorithms {
                let _ = run_algorithm(algorithm, &warm_graph, dim, cfg.workers, cfg.node_budget);
            }

            for trial in 0..cfg.trials {
                let graph = Graph::erdos_renyi(cfg.n, p, cfg.seed + trial as u64)?;
                for (slot, &algorithm) in cfg.algorithms.iter().enumerate() {
                    let start = Instant::now();
                    let outcome =
                        run_algorithm(algorithm, &graph, dim, cfg.workers, cfg.node_budget);
                    let elapsed_us = start.elapsed().as_secs_f64() * 1e6;
                    match outcome {
                        Ok(run) => {
                            times[slot].push(elapsed_us);
                            probes[slot].push(run.counters.edge_probes);
                            merges[slot].push(run.counters.merge_comparisons);
                            f_vectors[slot].push(run.tree.f_vector().to_vec());
                            trial_log.push(TrialRecord {
                                trial,
                                algorithm,
                                dim,
                                time_us: elapsed_us,
                                edge_probes: run.counters.edge_probes,
                                merge_comparisons: run.counters.merge_comparisons,
                                nodes_created: run.counters.nodes_created,
                            });
                            if trial == 0 {
                                spot_sets[slot] = Some((algorithm, run.tree.as_simplex_set()));
                            }
                        }
                        Err(ConstructionError::NodeBudgetExceeded { .. }) => {
                            failures[slot] += 1;
                        }
                        Err(fatal) => return Err(BenchError::Construction(fatal)),
                    }
                }
                if trial == 0 {
                    let mut agreed: Option<&(Algorithm, Vec<Simplex>)> = None;
                    for entry in spot_sets.iter().flatten() {
                        match agreed {
                            None => agreed = Some(entry),
                            Some((first, set)) => {
                                if *set != entry.1 {
                                    return Err(BenchError::SpotCheck {
                                        p,
                                        dim,
                                        first: *first,
                                        second: entry.0,
                                    });
                                }
                            }
                        }
                    }
                }
            }

            for (slot, &algorithm) in cfg.algorithms.iter().enumerate() {
                cells.push(CellResult {
                    p,
                    dim,
                    algorithm,
                    trials: cfg.trials,
                    failures: failures[slot],
                    mean_time_us: mean(&times[slot]),
                    stddev_time_us: stddev(&times[slot]),
                    mean_edge_probes: mean_u64(&probes[slot]),
                    mean_merge_comparisons: mean_u64(&merges[slot]),
                    mean_f_vector: mean_f_vector(&f_vectors[slot]),
                });
            }
        }
    }

    Ok(ExperimentReport { cells, trial_log })
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn mean_u64(xs: &[u64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.iter().map(|&x| x as f64).sum::<f64>() / xs.len() as f64
}

fn stddev(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    let var = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64;
    var.sqrt()
}

fn mean_f_vector(samples: &[Vec<usize>]) -> Vec<f64> {
    let width = samples.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![0.0; width];
    for sample in samples {
        for (k, &count) in sample.iter().enumerate() {
            out[k] += count as f64;
        }
    }
    for entry in &mut out {
        *entry /= samples.len().max(1) as f64;
    }
    out
}
