//! Table and stats-file rendering.
//!
//! One table per algorithm, rows keyed by p and columns by maximal
//! dimension, cell value the mean construction time in microseconds.
//! Markdown cells carry thousands separators; CSV cells are raw decimals.
//! A cell whose every trial was aborted by the node budget renders as
//! "No Data Available".

use std::fmt::Write as _;

use crate::experiment::{Algorithm, CellResult, OutputFormat, TrialRecord};

const NO_DATA: &str = "No Data Available";

/// Formats a grid of cell results as one table per algorithm.
pub fn emit_table(cells: &[CellResult], format: OutputFormat) -> String {
    let algorithms = distinct(cells.iter().map(|c| c.algorithm));
    let p_rows = distinct_f64(cells.iter().map(|c| c.p));
    let dim_cols = distinct(cells.iter().map(|c| c.dim));
    let mut out = String::new();
    for (i, &algorithm) in algorithms.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match format {
            OutputFormat::Markdown => emit_markdown(&mut out, cells, algorithm, &p_rows, &dim_cols),
            OutputFormat::Csv => {
                emit_csv(&mut out, cells, algorithm, &p_rows, &dim_cols, i == 0)
            }
        }
    }
    out
}

fn emit_markdown(
    out: &mut String,
    cells: &[CellResult],
    algorithm: Algorithm,
    p_rows: &[f64],
    dim_cols: &[usize],
) {
    let _ = writeln!(
        out,
        "### Mean run times (microseconds) — {algorithm} algorithm\n"
    );
    let _ = write!(out, "| p\\dimension |");
    for dim in dim_cols {
        let _ = write!(out, " {dim} |");
    }
    out.push('\n');
    let _ = write!(out, "|---|");
    for _ in dim_cols {
        let _ = write!(out, "---|");
    }
    out.push('\n');
    for &p in p_rows {
        let _ = write!(out, "| {p} |");
        for &dim in dim_cols {
            match lookup(cells, algorithm, p, dim) {
                Some(cell) if cell.has_data() => {
                    let _ = write!(out, " {} |", with_thousands(cell.mean_time_us));
                }
                Some(_) => {
                    let _ = write!(out, " {NO_DATA} |");
                }
                None => {
                    let _ = write!(out, " |");
                }
            }
        }
        out.push('\n');
    }
}

fn emit_csv(
    out: &mut String,
    cells: &[CellResult],
    algorithm: Algorithm,
    p_rows: &[f64],
    dim_cols: &[usize],
    with_header: bool,
) {
    if with_header {
        let _ = write!(out, "algorithm,p");
        for dim in dim_cols {
            let _ = write!(out, ",{dim}");
        }
        out.push('\n');
    }
    for &p in p_rows {
        let _ = write!(out, "{algorithm},{p}");
        for &dim in dim_cols {
            match lookup(cells, algorithm, p, dim) {
                Some(cell) if cell.has_data() => {
                    let _ = write!(out, ",{:.2}", cell.mean_time_us);
                }
                Some(_) => {
                    let _ = write!(out, ",{NO_DATA}");
                }
                None => out.push(','),
            }
        }
        out.push('\n');
    }
}

/// Per-trial counter dump: one CSV row per successful timed construction.
pub fn trial_stats_csv(records: &[TrialRecord]) -> String {
    let mut out =
        String::from("trial,algorithm,dim,time_us,edge_probes,merge_comparisons,nodes_created\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{:.2},{},{},{}",
            r.trial, r.algorithm, r.dim, r.time_us, r.edge_probes, r.merge_comparisons,
            r.nodes_created
        );
    }
    out
}

fn lookup(cells: &[CellResult], algorithm: Algorithm, p: f64, dim: usize) -> Option<&CellResult> {
    cells
        .iter()
        .find(|c| c.algorithm == algorithm && c.p == p && c.dim == dim)
}

fn distinct<T: PartialEq + Copy>(values: impl Iterator<Item = T>) -> Vec<T> {
    let mut out = Vec::new();
    for v in values {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

fn distinct_f64(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for v in values {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// 12345.678 -> "12,345.68".
fn with_thousands(value: f64) -> String {
    let plain = format!("{value:.2}");
    let (int_part, frac_part) = plain.split_once('.').expect("{:.2} always has a point");
    let mut grouped = String::new();
    let digits: Vec<char> = int_part.chars().collect();
    for (i, c) in digits.iter().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            grouped.push(',');
        }
        grouped.push(*c);
    }
    format!("{grouped}.{frac_part}")
}
