//! The expansion algorithms and their instrumentation.
//!
//! Five ways to build the clique complex of a graph as a simplex tree:
//!
//! - [`new_vr`]: recursive expansion whose inner step is [`table_lookup`],
//!   one O(1) adjacency probe per surviving candidate;
//! - [`incremental_vr`]: the same recursion with [`merge_intersect`] of the
//!   candidate list against the vertex's upper neighbors;
//! - [`inductive_vr`]: level-by-level sweep recomputing the full
//!   upper-neighbor intersection for every simplex;
//! - [`brute_force_vr`]: enumerate every vertex subset and keep the cliques
//!   (the testing oracle; feasible for small graphs only, roughly n <= 25 at
//!   d <= 4);
//! - [`verify_expansion_kernels`]: runs the probe and merge kernels side by
//!   side and errors if they ever disagree on a child set.
//!
//! The two instrumented constructions count their work in
//! [`ComparisonCounters`]: edge-table probes for the lookup kernel, element
//! comparisons for the merge kernels, and tree-node insertions for both,
//! with a per-tree-layer breakdown. A comparison is counted once per loop
//! iteration over the cursor pair; reads of the cached list endpoints in the
//! early-exit guards are not comparisons of the two cursors and are not
//! counted.

use std::mem;
use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::simplex_tree::{NodeIdx, Simplex, SimplexTree, StructuralError};

/// Dimension cap for a construction run: no simplex of dimension above the
/// cap is created. Recursion depth equals the effective cap, which never
/// exceeds the vertex count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct MaxDim(usize);

impl MaxDim {
    pub fn new(d: usize) -> MaxDim {
        MaxDim(d)
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl From<usize> for MaxDim {
    fn from(d: usize) -> MaxDim {
        MaxDim(d)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Structural(#[from] StructuralError),
    #[error("vertex {0} is not among the given siblings")]
    VertexNotInSiblings(VertexId),
    #[error("node budget of {budget} nodes exceeded")]
    NodeBudgetExceeded { budget: u64 },
    #[error(
        "expansion kernels diverged at vertex {vertex} (layer {layer}): \
         table-lookup found {table:?}, merge found {merge:?}"
    )]
    KernelDivergence {
        vertex: VertexId,
        layer: usize,
        table: Vec<VertexId>,
        merge: Vec<VertexId>,
    },
}

/// Per-layer slice of the counters: layer k holds the calls made for
/// vertices residing at depth k of the tree.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LayerCounters {
    pub table_lookup_calls: u64,
    pub edge_probes: u64,
    pub merge_calls: u64,
    pub merge_comparisons: u64,
}

/// Work tally for one construction run.
///
/// `nodes_created` equals the f-vector sum of the produced tree. Runs never
/// share counters; parallel construction sums per-subtree counters, which
/// reproduces the serial totals exactly.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ComparisonCounters {
    /// Edge-table probes made inside table-lookup kernels.
    pub edge_probes: u64,
    /// Element comparisons made inside merge-intersection kernels.
    pub merge_comparisons: u64,
    /// Simplex-tree node insertions.
    pub nodes_created: u64,
    layers: Vec<LayerCounters>,
}

impl ComparisonCounters {
    pub fn new() -> ComparisonCounters {
        ComparisonCounters::default()
    }

    /// Per-layer breakdown; index k is tree layer k. Standalone kernel calls
    /// made outside a construction carry no layer and appear only in totals.
    pub fn layers(&self) -> &[LayerCounters] {
        &self.layers
    }

    pub fn layer(&self, k: usize) -> LayerCounters {
        self.layers.get(k).copied().unwrap_or_default()
    }

    /// Accumulates another run's tallies (used to merge per-subtree counters).
    pub fn absorb(&mut self, other: &ComparisonCounters) {
        self.edge_probes += other.edge_probes;
        self.merge_comparisons += other.merge_comparisons;
        self.nodes_created += other.nodes_created;
        if self.layers.len() < other.layers.len() {
            self.layers.resize(other.layers.len(), LayerCounters::default());
        }
        for (mine, theirs) in self.layers.iter_mut().zip(&other.layers) {
            mine.table_lookup_calls += theirs.table_lookup_calls;
            mine.edge_probes += theirs.edge_probes;
            mine.merge_calls += theirs.merge_calls;
            mine.merge_comparisons += theirs.merge_comparisons;
        }
    }

    fn layer_mut(&mut self, layer: usize) -> &mut LayerCounters {
        if self.layers.len() <= layer {
            self.layers.resize(layer + 1, LayerCounters::default());
        }
        &mut self.layers[layer]
    }

    fn record_table_lookup(&mut self, layer: Option<usize>, probes: u64) {
        self.edge_probes += probes;
        if let Some(k) = layer {
            let slot = self.layer_mut(k);
            slot.table_lookup_calls += 1;
            slot.edge_probes += probes;
        }
    }

    fn record_merge(&mut self, layer: Option<usize>, comparisons: u64) {
        self.merge_comparisons += comparisons;
        if let Some(k) = layer {
            let slot = self.layer_mut(k);
            slot.merge_calls += 1;
            slot.merge_comparisons += comparisons;
        }
    }

    fn record_node(&mut self) {
        self.nodes_created += 1;
    }
}

/// Shared node-count budget. One gate is threaded through a whole run, so a
/// parallel construction aborts as a unit once the sum of its subtree sizes
/// passes the limit.
#[derive(Debug)]
pub(crate) struct BudgetGate {
    limit: u64,
    used: AtomicU64,
}

impl BudgetGate {
    pub(crate) fn new(limit: u64) -> BudgetGate {
        BudgetGate {
            limit,
            used: AtomicU64::new(0),
        }
    }

    /// Claims one node; false once the limit is spent.
    pub(crate) fn admit(&self) -> bool {
        self.used.fetch_add(1, Ordering::Relaxed) < self.limit
    }

    pub(crate) fn limit(&self) -> u64 {
        self.limit
    }
}

// ---------------------------------------------------------------------------
// Kernels
// ---------------------------------------------------------------------------

/// Scan core of [`table_lookup`]: walk the siblings strictly greater than
/// `v`, stop once past min(end of list, largest neighbor of v), probe each
/// candidate. Returns the probe count.
fn table_scan(g: &Graph, siblings: &[VertexId], v: VertexId, out: &mut Vec<VertexId>) -> u64 {
    debug_assert!(siblings.windows(2).all(|w| w[0] < w[1]), "siblings unsorted");
    let Some(cap) = g.largest_neighbor(v) else {
        return 0;
    };
    let start = siblings.partition_point(|&w| w <= v);
    let mut probes = 0;
    for &w in &siblings[start..] {
        if w > cap {
            break;
        }
        probes += 1;
        if g.has_edge(v, w) {
            out.push(w);
        }
    }
    probes
}

/// Scan core of [`simplified_table_lookup`]: probe every candidate greater
/// than `v`, no largest-neighbor cutoff.
fn simplified_table_scan(
    g: &Graph,
    candidates: &[VertexId],
    v: VertexId,
    out: &mut Vec<VertexId>,
) -> u64 {
    debug_assert!(
        candidates.windows(2).all(|w| w[0] < w[1]),
        "candidates unsorted"
    );
    let start = candidates.partition_point(|&w| w <= v);
    let mut probes = 0;
    for &w in &candidates[start..] {
        probes += 1;
        if g.has_edge(v, w) {
            out.push(w);
        }
    }
    probes
}

/// Scan core of [`merge_intersect`]: the guarded four-branch merge. The
/// range guards return early as soon as either cursor exceeds the other
/// list's largest element, at which point no further match is possible;
/// they never change the result. One comparison is counted per loop
/// iteration of the cursor pair; the cached endpoint reads are not.
fn merge_scan(l1: &[VertexId], l2: &[VertexId], out: &mut Vec<VertexId>) -> u64 {
    debug_assert!(l1.windows(2).all(|w| w[0] < w[1]), "l1 unsorted");
    debug_assert!(l2.windows(2).all(|w| w[0] < w[1]), "l2 unsorted");
    let (Some(&end1), Some(&end2)) = (l1.last(), l2.last()) else {
        return 0;
    };
    let (mut i, mut j) = (0usize, 0usize);
    let mut comparisons = 0;
    while i < l1.len() && j < l2.len() {
        comparisons += 1;
        let (a, b) = (l1[i], l2[j]);
        if a == b {
            out.push(a);
            i += 1;
            j += 1;
        } else if a > end2 || b > end1 {
            break;
        } else if a < b {
            i += 1;
        } else {
            j += 1;
        }
    }
    comparisons
}

/// Scan core of [`simplified_merge_intersect`]: the plain three-branch merge
/// without the range guards.
fn simplified_merge_scan(l1: &[VertexId], l2: &[VertexId], out: &mut Vec<VertexId>) -> u64 {
    debug_assert!(l1.windows(2).all(|w| w[0] < w[1]), "l1 unsorted");
    debug_assert!(l2.windows(2).all(|w| w[0] < w[1]), "l2 unsorted");
    let (mut i, mut j) = (0usize, 0usize);
    let mut comparisons = 0;
    while i < l1.len() && j < l2.len() {
        comparisons += 1;
        let (a, b) = (l1[i], l2[j]);
        if a == b {
            out.push(a);
            i += 1;
            j += 1;
        } else if a < b {
            i += 1;
        } else {
            j += 1;
        }
    }
    comparisons
}

/// Children of `v` within its sibling list: every sibling `w > v` with
/// `w` no greater than v's largest neighbor and `{v, w}` an edge. One edge
/// probe is counted per candidate examined. `v` must itself be a sibling.
pub fn table_lookup(
    g: &Graph,
    siblings: &[VertexId],
    v: VertexId,
    counters: &mut ComparisonCounters,
) -> Result<Vec<VertexId>, ConstructionError> {
    if siblings.binary_search(&v).is_err() {
        return Err(ConstructionError::VertexNotInSiblings(v));
    }
    let mut out = Vec::new();
    let probes = table_scan(g, siblings, v, &mut out);
    counters.record_table_lookup(None, probes);
    Ok(out)
}

/// Uncapped variant of [`table_lookup`]: probes all candidates greater than
/// `v` unconditionally, so the probe count is exactly the number of such
/// candidates. Same result as the capped scan.
pub fn simplified_table_lookup(
    g: &Graph,
    candidates: &[VertexId],
    v: VertexId,
    counters: &mut ComparisonCounters,
) -> Vec<VertexId> {
    let mut out = Vec::new();
    let probes = simplified_table_scan(g, candidates, v, &mut out);
    counters.record_table_lookup(None, probes);
    out
}

/// Intersection of two strictly increasing lists by the guarded four-branch
/// merge. Unsorted input is a contract violation checked in debug builds
/// only; release builds assume it.
pub fn merge_intersect(
    l1: &[VertexId],
    l2: &[VertexId],
    counters: &mut ComparisonCounters,
) -> Vec<VertexId> {
    let mut out = Vec::new();
    let comparisons = merge_scan(l1, l2, &mut out);
    counters.record_merge(None, comparisons);
    out
}

/// Intersection by the plain three-branch merge. Identical result to
/// [`merge_intersect`]; its comparison count is never smaller, since the
/// guards only prune work.
pub fn simplified_merge_intersect(
    l1: &[VertexId],
    l2: &[VertexId],
    counters: &mut ComparisonCounters,
) -> Vec<VertexId> {
    let mut out = Vec::new();
    let comparisons = simplified_merge_scan(l1, l2, &mut out);
    counters.record_merge(None, comparisons);
    out
}

// ---------------------------------------------------------------------------
// Recursive expansion, generic over the kernel
// ---------------------------------------------------------------------------

/// The step that turns a sibling list into the child list of one of its
/// members. Both instrumented constructions share the surrounding recursion
/// and differ only here.
pub(crate) trait ExpansionKernel: Sync {
    fn children_into(
        &self,
        g: &Graph,
        siblings: &[VertexId],
        v: VertexId,
        layer: usize,
        counters: &mut ComparisonCounters,
        out: &mut Vec<VertexId>,
    ) -> Result<(), ConstructionError>;
}

pub(crate) struct TableLookupKernel;

impl ExpansionKernel for TableLookupKernel {
    fn children_into(
        &self,
        g: &Graph,
        siblings: &[VertexId],
        v: VertexId,
        layer: usize,
        counters: &mut ComparisonCounters,
        out: &mut Vec<VertexId>,
    ) -> Result<(), ConstructionError> {
        let probes = table_scan(g, siblings, v, out);
        counters.record_table_lookup(Some(layer), probes);
        Ok(())
    }
}

pub(crate) struct MergeIntersectKernel;

impl ExpansionKernel for MergeIntersectKernel {
    fn children_into(
        &self,
        g: &Graph,
        siblings: &[VertexId],
        v: VertexId,
        layer: usize,
        counters: &mut ComparisonCounters,
        out: &mut Vec<VertexId>,
    ) -> Result<(), ConstructionError> {
        let comparisons = merge_scan(siblings, g.upper_neighbors(v), out);
        counters.record_merge(Some(layer), comparisons);
        Ok(())
    }
}

/// Runs both kernels on every step and fails loudly if their child sets
/// ever differ. Both counters are recorded.
pub(crate) struct VerifyingKernel;

impl ExpansionKernel for VerifyingKernel {
    fn children_into(
        &self,
        g: &Graph,
        siblings: &[VertexId],
        v: VertexId,
        layer: usize,
        counters: &mut ComparisonCounters,
        out: &mut Vec<VertexId>,
    ) -> Result<(), ConstructionError> {
        let probes = table_scan(g, siblings, v, out);
        counters.record_table_lookup(Some(layer), probes);
        let mut merged = Vec::new();
        let comparisons = merge_scan(siblings, g.upper_neighbors(v), &mut merged);
        counters.record_merge(Some(layer), comparisons);
        if *out != merged {
            return Err(ConstructionError::KernelDivergence {
                vertex: v,
                layer,
                table: mem::take(out),
                merge: merged,
            });
        }
        Ok(())
    }
}

/// Reusable per-depth candidate buffers; recursion at depth j owns slot j.
type BufferPool = Vec<Vec<VertexId>>;

fn make_pool(g: &Graph, d: MaxDim) -> BufferPool {
    let slots = effective_cap(g, d) + 1;
    vec![Vec::new(); slots]
}

/// Depth actually reachable: the dimension cap, but never beyond what n
/// vertices can support.
fn effective_cap(g: &Graph, d: MaxDim) -> usize {
    d.get().min(g.vertex_count().saturating_sub(1))
}

fn insert_counted(
    tree: &mut SimplexTree,
    parent: Option<NodeIdx>,
    label: VertexId,
    counters: &mut ComparisonCounters,
    gate: Option<&BudgetGate>,
) -> Result<NodeIdx, ConstructionError> {
    let node = tree.insert_child(parent, label)?;
    counters.record_node();
    if let Some(gate) = gate {
        if !gate.admit() {
            return Err(ConstructionError::NodeBudgetExceeded {
                budget: gate.limit(),
            });
        }
    }
    Ok(node)
}

/// One expansion run's fixed context: the graph, the effective dimension
/// cap, the kernel, and the optional budget gate.
pub(crate) struct Expansion<'a, K> {
    g: &'a Graph,
    cap: usize,
    kernel: &'a K,
    gate: Option<&'a BudgetGate>,
}

impl<'a, K: ExpansionKernel> Expansion<'a, K> {
    pub(crate) fn new(g: &'a Graph, d: MaxDim, kernel: &'a K, gate: Option<&'a BudgetGate>) -> Self {
        Expansion {
            g,
            cap: effective_cap(g, d),
            kernel,
            gate,
        }
    }

    /// The shared recursion: `tau` is already in the tree and
    /// `pool[tau_dim]` holds its candidate list; every candidate becomes a
    /// child, and the kernel computes each child's own candidates.
    /// Recursion depth is bounded by the effective cap (at most n - 1).
    fn add_cofaces(
        &self,
        tree: &mut SimplexTree,
        counters: &mut ComparisonCounters,
        pool: &mut BufferPool,
        tau: NodeIdx,
        tau_dim: usize,
    ) -> Result<(), ConstructionError> {
        if tau_dim >= self.cap {
            return Ok(());
        }
        let candidates = mem::take(&mut pool[tau_dim]);
        let child_layer = tau_dim + 1;
        for &v in &candidates {
            let sigma = insert_counted(tree, Some(tau), v, counters, self.gate)?;
            let mut children = mem::take(&mut pool[child_layer]);
            children.clear();
            self.kernel
                .children_into(self.g, &candidates, v, child_layer, counters, &mut children)?;
            let descend = !children.is_empty() && child_layer < self.cap;
            pool[child_layer] = children;
            if descend {
                self.add_cofaces(tree, counters, pool, sigma, child_layer)?;
            }
        }
        pool[tau_dim] = candidates;
        Ok(())
    }

    /// Builds the subtree rooted at `root`: the part of the complex whose
    /// simplices have `root` as their minimum vertex.
    fn expand_root(
        &self,
        tree: &mut SimplexTree,
        counters: &mut ComparisonCounters,
        pool: &mut BufferPool,
        root: VertexId,
    ) -> Result<(), ConstructionError> {
        let node = insert_counted(tree, None, root, counters, self.gate)?;
        if self.cap == 0 {
            return Ok(());
        }
        pool[0].clear();
        pool[0].extend_from_slice(self.g.upper_neighbors(root));
        self.add_cofaces(tree, counters, pool, node, 0)
    }
}

pub(crate) fn expand_serial<K: ExpansionKernel>(
    g: &Graph,
    d: MaxDim,
    kernel: &K,
    gate: Option<&BudgetGate>,
) -> Result<(SimplexTree, ComparisonCounters), ConstructionError> {
    let expansion = Expansion::new(g, d, kernel, gate);
    let mut tree = SimplexTree::new();
    tree.reserve(g.vertex_count() + if d.get() >= 1 { g.edge_count() } else { 0 });
    let mut counters = ComparisonCounters::new();
    let mut pool = make_pool(g, d);
    for root in g.vertices() {
        expansion.expand_root(&mut tree, &mut counters, &mut pool, root)?;
    }
    Ok((tree, counters))
}

/// One root's subtree as a standalone tree plus its own counters; the
/// parallel runner splices these together in vertex order. The pool is the
/// worker's and is grown on demand so it can be reused across roots.
pub(crate) fn expand_single_root<K: ExpansionKernel>(
    g: &Graph,
    d: MaxDim,
    kernel: &K,
    root: VertexId,
    pool: &mut BufferPool,
    gate: Option<&BudgetGate>,
) -> Result<(SimplexTree, ComparisonCounters), ConstructionError> {
    let needed = effective_cap(g, d) + 1;
    if pool.len() < needed {
        pool.resize(needed, Vec::new());
    }
    let expansion = Expansion::new(g, d, kernel, gate);
    let mut tree = SimplexTree::new();
    let mut counters = ComparisonCounters::new();
    expansion.expand_root(&mut tree, &mut counters, pool, root)?;
    Ok((tree, counters))
}

// ---------------------------------------------------------------------------
// Public constructions
// ---------------------------------------------------------------------------

/// The table-lookup construction: the clique complex of `g` truncated to
/// dimension `d`, plus the run's counters. Output and counters are
/// deterministic for a fixed input.
pub fn new_vr(g: &Graph, d: MaxDim) -> (SimplexTree, ComparisonCounters) {
    expand_serial(g, d, &TableLookupKernel, None)
        .expect("unbudgeted expansion cannot fail unless the tree rejects an insertion")
}

/// [`new_vr`] with an optional node budget; exceeding it aborts the run.
pub fn new_vr_budgeted(
    g: &Graph,
    d: MaxDim,
    node_budget: Option<u64>,
) -> Result<(SimplexTree, ComparisonCounters), ConstructionError> {
    let gate = node_budget.map(BudgetGate::new);
    expand_serial(g, d, &TableLookupKernel, gate.as_ref())
}

/// The merge-based construction: identical output to [`new_vr`], but each
/// child list is computed by intersecting the sibling list with the
/// vertex's upper neighbors.
pub fn incremental_vr(g: &Graph, d: MaxDim) -> (SimplexTree, ComparisonCounters) {
    expand_serial(g, d, &MergeIntersectKernel, None)
        .expect("unbudgeted expansion cannot fail unless the tree rejects an insertion")
}

/// [`incremental_vr`] with an optional node budget.
pub fn incremental_vr_budgeted(
    g: &Graph,
    d: MaxDim,
    node_budget: Option<u64>,
) -> Result<(SimplexTree, ComparisonCounters), ConstructionError> {
    let gate = node_budget.map(BudgetGate::new);
    expand_serial(g, d, &MergeIntersectKernel, gate.as_ref())
}

/// Grows the subtree under `tau` using the table-lookup kernel: afterwards
/// the tree holds exactly the cofaces of `tau` on vertices above its
/// maximum, up to dimension `d`. `tau` must already be present and
/// `candidates` must be its future child labels (each adjacent to every
/// vertex of `tau` and greater than its maximum).
pub fn new_add_cofaces(
    g: &Graph,
    d: MaxDim,
    tau: &Simplex,
    candidates: &[VertexId],
    tree: &mut SimplexTree,
    counters: &mut ComparisonCounters,
) -> Result<(), ConstructionError> {
    add_cofaces_impl(g, d, &TableLookupKernel, tau, candidates, tree, counters)
}

/// Merge-kernel twin of [`new_add_cofaces`]; the resulting subtree is
/// identical, only the counted work differs.
pub fn add_cofaces(
    g: &Graph,
    d: MaxDim,
    tau: &Simplex,
    candidates: &[VertexId],
    tree: &mut SimplexTree,
    counters: &mut ComparisonCounters,
) -> Result<(), ConstructionError> {
    add_cofaces_impl(g, d, &MergeIntersectKernel, tau, candidates, tree, counters)
}

fn add_cofaces_impl<K: ExpansionKernel>(
    g: &Graph,
    d: MaxDim,
    kernel: &K,
    tau: &Simplex,
    candidates: &[VertexId],
    tree: &mut SimplexTree,
    counters: &mut ComparisonCounters,
) -> Result<(), ConstructionError> {
    let node = tree
        .find(tau.vertices())
        .ok_or_else(|| StructuralError::MissingSimplex(tau.clone()))?;
    let tau_dim = tau.dimension();
    let expansion = Expansion::new(g, d, kernel, None);
    let mut pool: BufferPool = vec![Vec::new(); tau_dim.max(expansion.cap) + 2];
    pool[tau_dim] = candidates.to_vec();
    expansion.add_cofaces(tree, counters, &mut pool, node, tau_dim)
}

/// Level-by-level construction: children of every k-simplex are found by
/// intersecting the upper neighbors of all its vertices from scratch.
/// Uninstrumented; returns only the tree.
pub fn inductive_vr(g: &Graph, d: MaxDim) -> SimplexTree {
    inductive_vr_budgeted(g, d, None)
        .expect("unbudgeted expansion cannot fail unless the tree rejects an insertion")
}

/// [`inductive_vr`] with an optional node budget.
pub fn inductive_vr_budgeted(
    g: &Graph,
    d: MaxDim,
    node_budget: Option<u64>,
) -> Result<SimplexTree, ConstructionError> {
    let gate = node_budget.map(BudgetGate::new);
    let gate = gate.as_ref();
    let mut tree = SimplexTree::new();
    let mut counters = ComparisonCounters::new();
    for root in g.vertices() {
        insert_counted(&mut tree, None, root, &mut counters, gate)?;
    }
    let mut scratch = Vec::new();
    let mut intersection = Vec::new();
    for level in 1..=effective_cap(g, d) {
        for node in tree.nodes_at_level(level - 1) {
            let simplex = tree.simplex_of(node);
            intersect_upper_neighbors(g, simplex.vertices(), &mut intersection, &mut scratch);
            for &w in &intersection {
                insert_counted(&mut tree, Some(node), w, &mut counters, gate)?;
            }
        }
    }
    Ok(tree)
}

/// `intersection` of the upper-neighbor lists of every vertex in `simplex`.
fn intersect_upper_neighbors(
    g: &Graph,
    vertices: &[VertexId],
    intersection: &mut Vec<VertexId>,
    scratch: &mut Vec<VertexId>,
) {
    intersection.clear();
    let (&first, rest) = vertices
        .split_first()
        .expect("simplices are nonempty");
    intersection.extend_from_slice(g.upper_neighbors(first));
    for &v in rest {
        scratch.clear();
        simplified_merge_scan(intersection, g.upper_neighbors(v), scratch);
        mem::swap(intersection, scratch);
        if intersection.is_empty() {
            return;
        }
    }
}

/// The definition, executed literally: every subset of up to d + 1 vertices
/// is enumerated and kept iff all its vertex pairs are edges. This is the
/// oracle the other constructions are tested against; cost grows as
/// C(n, d + 1), so keep n small (roughly n <= 25 at d <= 4).
pub fn brute_force_vr(g: &Graph, d: MaxDim) -> SimplexTree {
    let n = g.vertex_count();
    let mut tree = SimplexTree::new();
    for root in g.vertices() {
        tree.insert_child(None, root)
            .expect("fresh roots cannot collide");
    }
    let mut path = Vec::new();
    for size in 2..=(effective_cap(g, d) + 1).min(n) {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            if is_clique(g, &combo) {
                path.clear();
                path.extend(combo.iter().map(|&i| VertexId(i as u32)));
                let parent = tree
                    .find(&path[..size - 1])
                    .expect("clique prefixes are cliques inserted in the previous pass");
                tree.insert_child(Some(parent), path[size - 1])
                    .expect("each subset is enumerated once");
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    tree
}

fn is_clique(g: &Graph, combo: &[usize]) -> bool {
    for (i, &a) in combo.iter().enumerate() {
        for &b in &combo[i + 1..] {
            if !g.has_edge(VertexId(a as u32), VertexId(b as u32)) {
                return false;
            }
        }
    }
    true
}

/// Advances `combo` to the next size-k subset of `0..n` in lexicographic
/// order; false when exhausted.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] != i + n - k {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Runs the full expansion once with both kernels in lockstep and reports
/// the first step, if any, where their child sets differ.
pub fn verify_expansion_kernels(g: &Graph, d: MaxDim) -> Result<(), ConstructionError> {
    expand_serial(g, d, &VerifyingKernel, None).map(|_| ())
}
