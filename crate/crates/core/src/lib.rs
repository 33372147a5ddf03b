//! Clique-complex (Vietoris-Rips) construction over simplex trees.
//!
//! Given an undirected graph, the k-skeleton of its clique complex can be
//! grown one dimension at a time inside a simplex tree. This crate ships
//! several constructions that produce identical complexes but spend their
//! inner loops differently, instrumented so the difference is measurable:
//!
//! - [`construction::new_vr`] certifies each new simplex with constant-time
//!   edge-table probes ([`construction::table_lookup`]);
//! - [`construction::incremental_vr`] intersects sorted neighbor lists
//!   ([`construction::merge_intersect`]), the classical approach;
//! - [`construction::inductive_vr`] recomputes full intersections per
//!   simplex, level by level;
//! - [`construction::brute_force_vr`] enumerates vertex subsets directly
//!   and serves as the testing oracle;
//! - [`parallel`] runs the two instrumented constructions across threads,
//!   one root subtree per work unit, with output and counters identical to
//!   the serial runs.
//!
//! Graphs come from explicit edge lists, seeded Erdős–Rényi sampling, or
//! Euclidean point-cloud thresholding ([`graph`]). The [`combinatorics`]
//! module holds the pairing arguments (missing pair, minimal pair, the
//! orders on simplices and pairs) that make the probe-based construction
//! correct and duplicate-free.

pub mod combinatorics;
pub mod construction;
pub mod graph;
pub mod parallel;
pub mod simplex_tree;

pub use combinatorics::{
    compare_pairs, compare_simplices, minimal_pair, missing_pair, CombinatoricsError,
    MinimalPairDecomposition, SimplexPair,
};
pub use construction::{
    add_cofaces, brute_force_vr, incremental_vr, incremental_vr_budgeted, inductive_vr,
    inductive_vr_budgeted, merge_intersect, new_add_cofaces, new_vr, new_vr_budgeted,
    simplified_merge_intersect, simplified_table_lookup, table_lookup, verify_expansion_kernels,
    ComparisonCounters, ConstructionError, LayerCounters, MaxDim,
};
pub use graph::{Graph, GraphError, PointCloud, VertexId};
pub use parallel::{
    parallel_incremental_vr, parallel_incremental_vr_budgeted, parallel_new_vr,
    parallel_new_vr_budgeted, WorkerPlan,
};
pub use simplex_tree::{NodeIdx, Simplex, SimplexTree, StructuralError};
