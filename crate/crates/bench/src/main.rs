//! `ripsbench`: generate graphs, build clique complexes, race the
//! constructions over seeded grids, and verify that all of them agree.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use rips_bench::{
    emit_table, run_experiment, trial_stats_csv, Algorithm, ExperimentConfig, OutputFormat,
    TrialRecord,
};
use rips_core::{
    brute_force_vr, incremental_vr_budgeted, inductive_vr_budgeted, new_vr_budgeted,
    parallel_incremental_vr_budgeted, parallel_new_vr_budgeted, verify_expansion_kernels,
    ComparisonCounters, Graph, MaxDim, PointCloud, SimplexTree,
};

#[derive(Parser)]
#[command(
    name = "ripsbench",
    about = "Clique-complex construction benchmark harness",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded Erdős–Rényi graph as an edge-list file.
    Gen(GenArgs),
    /// Build one complex from an edge list or point cloud and report stats.
    Build(BuildArgs),
    /// Run the (p, dimension) benchmark grid and emit per-algorithm tables.
    Bench(BenchArgs),
    /// Cross-check all constructions on small random graphs; nonzero exit on
    /// any disagreement.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Vertex count.
    #[arg(long)]
    n: usize,
    /// Edge probability in [0, 1].
    #[arg(long)]
    p: f64,
    /// PRNG seed (explicit by design; there is no default).
    #[arg(long)]
    seed: u64,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BuildArgs {
    /// Edge-list file, or a point-cloud CSV when --epsilon is given.
    #[arg(long)]
    input: PathBuf,
    /// Distance threshold; switches the input to point-cloud CSV.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Maximal dimension of the complex.
    #[arg(long)]
    dim: usize,
    /// Construction to run.
    #[arg(long)]
    algo: Algorithm,
    /// Worker threads (0 = all logical CPUs).
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Abort once the tree would exceed this many nodes.
    #[arg(long)]
    node_budget: Option<u64>,
    /// Write the canonical simplex dump here.
    #[arg(long)]
    dump_out: Option<PathBuf>,
    /// Write a one-row per-trial counter CSV here.
    #[arg(long)]
    stats_out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Vertex count per graph.
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Edge probabilities, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    p: Vec<f64>,
    /// Maximal dimensions, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    dims: Vec<usize>,
    /// Graphs per cell.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Base seed; trial t uses seed + t (explicit by design).
    #[arg(long)]
    seed: u64,
    /// Algorithms to race, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [Algorithm::New, Algorithm::Incremental])]
    algos: Vec<Algorithm>,
    /// Worker threads inside each construction (0 = all logical CPUs);
    /// trials themselves always run one at a time for clean timing.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Abort trials whose tree would exceed this many nodes; such cells
    /// report "No Data Available" once every trial aborts.
    #[arg(long)]
    node_budget: Option<u64>,
    /// Table format: md or csv.
    #[arg(long, default_value = "md")]
    out_format: OutputFormat,
    /// Write the tables here as well as stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the per-trial counter CSV here.
    #[arg(long)]
    stats_out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Number of random graphs to check.
    #[arg(long, default_value_t = 200)]
    trials: usize,
    /// Largest vertex count in the sweep.
    #[arg(long, default_value_t = 20)]
    max_n: usize,
    /// Largest dimension cap in the sweep.
    #[arg(long, default_value_t = 5)]
    max_dim: usize,
    /// Base seed for the sweep.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Build(args) => cmd_build(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn resolve_workers(workers: usize) -> usize {
    if workers == 0 {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    } else {
        workers
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn cmd_gen(args: GenArgs) -> Result<ExitCode, String> {
    let graph = Graph::erdos_renyi(args.n, args.p, args.seed).map_err(|e| e.to_string())?;
    let text = graph.write_edge_list();
    match &args.out {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_build(args: BuildArgs) -> Result<ExitCode, String> {
    let text = read_file(&args.input)?;
    let graph = match args.epsilon {
        Some(epsilon) => {
            let cloud = PointCloud::read_csv(&text).map_err(|e| e.to_string())?;
            Graph::from_point_cloud(&cloud, epsilon).map_err(|e| e.to_string())?
        }
        None => Graph::read_edge_list(&text).map_err(|e| e.to_string())?,
    };
    let workers = resolve_workers(args.workers);
    let d = MaxDim::new(args.dim);

    let start = Instant::now();
    let (tree, counters): (SimplexTree, ComparisonCounters) = match (args.algo, workers) {
        (Algorithm::New, 1) => new_vr_budgeted(&graph, d, args.node_budget),
        (Algorithm::New, w) => parallel_new_vr_budgeted(&graph, d, w, args.node_budget),
        (Algorithm::Incremental, 1) => incremental_vr_budgeted(&graph, d, args.node_budget),
        (Algorithm::Incremental, w) => {
            parallel_incremental_vr_budgeted(&graph, d, w, args.node_budget)
        }
        (Algorithm::Inductive, _) => {
            inductive_vr_budgeted(&graph, d, args.node_budget).map(|tree| {
                let mut counters = ComparisonCounters::new();
                counters.nodes_created = tree.node_count() as u64;
                (tree, counters)
            })
        }
    }
    .map_err(|e| e.to_string())?;
    let elapsed_us = start.elapsed().as_secs_f64() * 1e6;

    let f_vector: Vec<String> = tree.f_vector().iter().map(|c| c.to_string()).collect();
    println!("input: {} vertices, {} edges", graph.vertex_count(), graph.edge_count());
    println!("algorithm: {} (dim <= {}, workers = {workers})", args.algo, args.dim);
    println!("f-vector: {}", f_vector.join(","));
    println!("simplices: {}", tree.node_count());
    println!("time_us: {elapsed_us:.2}");
    println!("edge_probes: {}", counters.edge_probes);
    println!("merge_comparisons: {}", counters.merge_comparisons);
    println!("nodes_created: {}", counters.nodes_created);

    if let Some(path) = &args.dump_out {
        write_file(path, &tree.canonical_dump())?;
    }
    if let Some(path) = &args.stats_out {
        let record = TrialRecord {
            trial: 0,
            algorithm: args.algo,
            dim: args.dim,
            time_us: elapsed_us,
            edge_probes: counters.edge_probes,
            merge_comparisons: counters.merge_comparisons,
            nodes_created: counters.nodes_created,
        };
        write_file(path, &trial_stats_csv(&[record]))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode, String> {
    let cfg = ExperimentConfig {
        n: args.n,
        p_list: args.p,
        dim_list: args.dims,
        trials: args.trials,
        seed: args.seed,
        algorithms: args.algos,
        workers: resolve_workers(args.workers),
        node_budget: args.node_budget,
        output_format: args.out_format,
        output_path: args.out.clone(),
    };
    let report = run_experiment(&cfg).map_err(|e| e.to_string())?;
    let tables = emit_table(&report.cells, cfg.output_format);
    print!("{tables}");
    if let Some(path) = &cfg.output_path {
        write_file(path, &tables)?;
    }
    if let Some(path) = &args.stats_out {
        write_file(path, &trial_stats_csv(&report.trial_log))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    if args.max_n < 5 {
        return Err("--max-n must be at least 5".into());
    }
    let p_cycle = [0.1, 0.3, 0.5, 0.8];
    for i in 0..args.trials {
        let n = 5 + i % (args.max_n - 4);
        let p = p_cycle[i % p_cycle.len()];
        let dim = 1 + i % args.max_dim.max(1);
        let seed = args.seed + i as u64;
        let graph = Graph::erdos_renyi(n, p, seed).map_err(|e| e.to_string())?;
        let d = MaxDim::new(dim);

        let oracle = brute_force_vr(&graph, d).as_simplex_set();
        let (table_tree, _) = new_vr_budgeted(&graph, d, None).map_err(|e| e.to_string())?;
        let (merge_tree, _) =
            incremental_vr_budgeted(&graph, d, None).map_err(|e| e.to_string())?;
        let inductive_tree = inductive_vr_budgeted(&graph, d, None).map_err(|e| e.to_string())?;

        let mismatch = [
            ("new", table_tree.as_simplex_set()),
            ("incremental", merge_tree.as_simplex_set()),
            ("inductive", inductive_tree.as_simplex_set()),
        ]
        .into_iter()
        .find(|(_, set)| *set != oracle);
        if let Some((name, _)) = mismatch {
            eprintln!(
                "MISMATCH: {name} disagrees with brute force on G(n={n}, p={p}, seed={seed}) at dim {dim}"
            );
            return Ok(ExitCode::from(2));
        }
        if let Err(e) = verify_expansion_kernels(&graph, d) {
            eprintln!("MISMATCH: {e} on G(n={n}, p={p}, seed={seed}) at dim {dim}");
            return Ok(ExitCode::from(2));
        }
    }
    println!(
        "verify: {} graphs (n <= {}, dim <= {}) — all constructions agree",
        args.trials, args.max_n, args.max_dim
    );
    Ok(ExitCode::SUCCESS)
}
