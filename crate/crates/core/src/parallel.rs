//! Parallel construction over per-root subtrees.
//!
//! The subtree below each level-0 vertex is independent of every other (all
//! of them read only the immutable graph), so the work unit is one root
//! vertex. Workers pull roots from a shared queue ordered by descending
//! upper-degree (low-index, high-degree roots own the largest subtrees and
//! should start first), build each subtree with its own counters, and the
//! finished subtrees are attached to the shared root in vertex order. The
//! output is therefore identical to the serial construction regardless of
//! worker count or scheduling, and the summed counters reproduce the serial
//! tallies exactly.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use crate::construction::{
    expand_single_root, BudgetGate, ComparisonCounters, ConstructionError, ExpansionKernel,
    MaxDim, MergeIntersectKernel, TableLookupKernel,
};
use crate::graph::{Graph, VertexId};
use crate::simplex_tree::SimplexTree;

/// A parallel run's static shape: how many workers, and the order in which
/// roots are handed out. Each root is claimed exactly once at runtime; one
/// worker degenerates to the serial construction.
#[derive(Debug, Clone)]
pub struct WorkerPlan {
    worker_count: usize,
    schedule: Vec<VertexId>,
}

impl WorkerPlan {
    /// Plans `worker_count` workers over the roots of `g`, largest expected
    /// subtrees first (descending upper-degree, ties by vertex order).
    ///
    /// # Panics
    /// Panics when `worker_count` is zero.
    pub fn new(g: &Graph, worker_count: usize) -> WorkerPlan {
        assert!(worker_count >= 1, "worker_count must be at least 1");
        let mut schedule: Vec<VertexId> = g.vertices().collect();
        schedule.sort_by_key(|&u| (std::cmp::Reverse(g.upper_neighbors(u).len()), u));
        WorkerPlan {
            worker_count,
            schedule,
        }
    }

    pub fn worker_count(&self) -> usize {
        self.worker_count
    }

    /// Root hand-out order.
    pub fn schedule(&self) -> &[VertexId] {
        &self.schedule
    }
}

/// Parallel twin of [`crate::construction::new_vr`]: same simplex set, same
/// counters, and a byte-identical canonical dump for any worker count.
///
/// # Panics
/// Panics when `workers` is zero.
pub fn parallel_new_vr(g: &Graph, d: MaxDim, workers: usize) -> (SimplexTree, ComparisonCounters) {
    run_parallel(g, d, workers, &TableLookupKernel, None)
        .expect("unbudgeted expansion cannot fail unless the tree rejects an insertion")
}

/// [`parallel_new_vr`] with a node budget shared across all workers.
pub fn parallel_new_vr_budgeted(
    g: &Graph,
    d: MaxDim,
    workers: usize,
    node_budget: Option<u64>,
) -> Result<(SimplexTree, ComparisonCounters), ConstructionError> {
    let gate = node_budget.map(BudgetGate::new);
    run_parallel(g, d, workers, &TableLookupKernel, gate.as_ref())
}

/// Parallel twin of [`crate::construction::incremental_vr`].
///
/// # Panics
/// Panics when `workers` is zero.
pub fn parallel_incremental_vr(
    g: &Graph,
    d: MaxDim,
    workers: usize,
) -> (SimplexTree, ComparisonCounters) {
    run_parallel(g, d, workers, &MergeIntersectKernel, None)
        .expect("unbudgeted expansion cannot fail unless the tree rejects an insertion")
}

/// [`parallel_incremental_vr`] with a node budget shared across all workers.
pub fn parallel_incremental_vr_budgeted(
    g: &Graph,
    d: MaxDim,
    workers: usize,
    node_budget: Option<u64>,
) -> Result<(SimplexTree, ComparisonCounters), ConstructionError> {
    let gate = node_budget.map(BudgetGate::new);
    run_parallel(g, d, workers, &MergeIntersectKernel, gate.as_ref())
}

fn run_parallel<K: ExpansionKernel>(
    g: &Graph,
    d: MaxDim,
    workers: usize,
    kernel: &K,
    gate: Option<&BudgetGate>,
) -> Result<(SimplexTree, ComparisonCounters), ConstructionError> {
    let plan = WorkerPlan::new(g, workers);
    let n = g.vertex_count();
    type Slot = Mutex<Option<Result<(SimplexTree, ComparisonCounters), ConstructionError>>>;
    let slots: Vec<Slot> = (0..n).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);

    thread::scope(|scope| {
        for _ in 0..plan.worker_count().min(n) {
            scope.spawn(|| {
                let mut pool = Vec::new();
                loop {
                    let ticket = next.fetch_add(1, Ordering::Relaxed);
                    let Some(&root) = plan.schedule().get(ticket) else {
                        break;
                    };
                    let result = expand_single_root(g, d, kernel, root, &mut pool, gate);
                    *slots[root.index()].lock().expect("subtree slot poisoned") = Some(result);
                }
            });
        }
    });

    // Serialization point: attach finished subtrees in vertex order so the
    // merged arena matches the serial layout.
    let mut tree = SimplexTree::new();
    let mut counters = ComparisonCounters::new();
    for slot in slots {
        let result = slot
            .into_inner()
            .expect("subtree slot poisoned")
            .expect("every root is claimed exactly once");
        let (subtree, subtree_counters) = result?;
        tree.attach_subtree(subtree)?;
        counters.absorb(&subtree_counters);
    }
    Ok((tree, counters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{incremental_vr, new_vr};

    fn demo_graph() -> Graph {
        Graph::build(
            11,
            &[
                (2, 1),
                (2, 0),
                (1, 0),
                (2, 3),
                (2, 4),
                (2, 5),
                (2, 6),
                (2, 7),
                (2, 8),
                (2, 9),
                (2, 10),
                (10, 1),
                (0, 10),
            ],
        )
        .unwrap()
    }

    #[test]
    fn plan_schedules_every_root_once_largest_first() {
        let g = demo_graph();
        let plan = WorkerPlan::new(&g, 4);
        assert_eq!(plan.worker_count(), 4);
        let mut seen: Vec<u32> = plan.schedule().iter().map(|v| v.0).collect();
        assert_eq!(plan.schedule()[0], VertexId(2)); // 8 upper neighbors
        seen.sort_unstable();
        assert_eq!(seen, (0..11).collect::<Vec<u32>>());
    }

    #[test]
    #[should_panic(expected = "at least 1")]
    fn zero_workers_is_a_caller_error() {
        WorkerPlan::new(&demo_graph(), 0);
    }

    #[test]
    fn parallel_matches_serial_on_demo_graph() {
        let g = demo_graph();
        let (serial_tree, serial_counters) = new_vr(&g, MaxDim::new(3));
        for workers in [1, 2, 4, 8] {
            let (tree, counters) = parallel_new_vr(&g, MaxDim::new(3), workers);
            assert_eq!(tree.canonical_dump(), serial_tree.canonical_dump());
            assert_eq!(counters, serial_counters, "workers = {workers}");
            tree.check_invariants().unwrap();
        }
    }

    #[test]
    fn parallel_incremental_matches_serial() {
        for seed in 90..98 {
            let g = Graph::erdos_renyi(40, 0.2, seed).unwrap();
            let (serial_tree, serial_counters) = incremental_vr(&g, MaxDim::new(4));
            for workers in [1, 3, 16] {
                let (tree, counters) = parallel_incremental_vr(&g, MaxDim::new(4), workers);
                assert_eq!(tree.canonical_dump(), serial_tree.canonical_dump());
                assert_eq!(counters, serial_counters);
            }
        }
    }

    #[test]
    fn complete_graph_dumps_identical_across_worker_counts() {
        let k6 = Graph::erdos_renyi(6, 1.0, 0).unwrap();
        let (serial, _) = new_vr(&k6, MaxDim::new(5));
        let dump = serial.canonical_dump();
        for workers in [1, 2, 3, 6] {
            let (tree, _) = parallel_new_vr(&k6, MaxDim::new(5), workers);
            assert_eq!(tree.canonical_dump(), dump);
            assert_eq!(tree.f_vector(), &[6, 15, 20, 15, 6, 1]);
        }
    }

    #[test]
    fn surplus_workers_idle_harmlessly() {
        let g = Graph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let (tree, _) = parallel_new_vr(&g, MaxDim::new(2), 64);
        assert_eq!(tree.f_vector(), &[3, 3, 1]);
    }

    #[test]
    fn shared_budget_aborts_parallel_runs() {
        let g = Graph::erdos_renyi(30, 0.5, 5).unwrap();
        let err = parallel_new_vr_budgeted(&g, MaxDim::new(3), 4, Some(20)).unwrap_err();
        assert!(matches!(err, ConstructionError::NodeBudgetExceeded { budget: 20 }));
    }
}
