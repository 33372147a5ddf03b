//! The simplex tree: a trie over ordered vertex labels.
//!
//! A simplex `{v0 < v1 < ... < vk}` is stored as the root-to-node path
//! labeled `v0, v1, ..., vk`, so the depth-k nodes are in bijection with the
//! k-simplices of the stored complex. Children of a node are kept in strictly
//! increasing label order; both expansion algorithms insert in that order, so
//! insertion is an O(1) append in the hot path and sibling scans stay
//! contiguous.
//!
//! Duplicate insertion is a hard error rather than a no-op: the expansion
//! algorithms are expected to create every simplex exactly once, and a
//! duplicate means one of them is broken.

use std::fmt;

use thiserror::Error;

use crate::graph::VertexId;

/// A nonempty, strictly increasing vertex sequence; dimension = length - 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Simplex {
    vertices: Vec<VertexId>,
}

/// Errors from simplex construction and tree mutation. These indicate caller
/// bugs, never data-dependent conditions, and are therefore never ignored.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructuralError {
    #[error("simplex vertices must be nonempty and strictly increasing")]
    MalformedSimplex,
    #[error("child label {child} must exceed parent label {parent}")]
    LabelOrder { parent: VertexId, child: VertexId },
    #[error("node already has a child labeled {0}")]
    DuplicateChild(VertexId),
    #[error("subtree must have exactly one root, found {0}")]
    NotASubtree(usize),
    #[error("subtree root {root} must exceed the last attached root {last}")]
    RootOrder { last: VertexId, root: VertexId },
    #[error("simplex {0} is not present in the tree")]
    MissingSimplex(Simplex),
}

impl Simplex {
    /// Validates and wraps an ordered vertex sequence.
    pub fn new(vertices: Vec<VertexId>) -> Result<Simplex, StructuralError> {
        if vertices.is_empty() || vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(StructuralError::MalformedSimplex);
        }
        Ok(Simplex { vertices })
    }

    /// Convenience constructor from raw indices.
    pub fn from_indices(indices: &[u32]) -> Result<Simplex, StructuralError> {
        Simplex::new(indices.iter().copied().map(VertexId).collect())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }

    /// The face obtained by deleting the vertex at `position`; `None` for a
    /// single vertex (faces of dimension -1 are not represented).
    pub fn face_without(&self, position: usize) -> Option<Simplex> {
        if self.vertices.len() <= 1 {
            return None;
        }
        let mut vertices = self.vertices.clone();
        vertices.remove(position);
        Some(Simplex { vertices })
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Canonical enumeration order: by dimension, then lexicographic on the
/// vertex sequence. This is the order of [`SimplexTree::as_simplex_set`] and
/// of the canonical dump. (The same-dimension comparator in the
/// combinatorics module is stricter: it rejects cross-dimension input.)
impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.vertices
            .len()
            .cmp(&other.vertices.len())
            .then_with(|| self.vertices.cmp(&other.vertices))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Index of a node within a [`SimplexTree`] arena.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeIdx(u32);

impl NodeIdx {
    #[inline]
    fn get(self) -> usize {
        self.0 as usize
    }
}

/// A child edge: the label is duplicated here so sibling order can be
/// maintained without chasing back into the arena.
#[derive(Debug, Clone, Copy)]
struct ChildEntry {
    label: VertexId,
    node: NodeIdx,
}

#[derive(Debug, Clone)]
struct TreeNode {
    label: VertexId,
    depth: u32,
    parent: Option<NodeIdx>,
    children: Vec<ChildEntry>,
}

/// A level-structured trie of simplices.
///
/// Immutable once construction finishes; shareable across threads. During
/// construction there is a single writer per tree (disjoint per-root
/// subtrees are built as separate trees and spliced in with
/// [`SimplexTree::attach_subtree`]).
#[derive(Debug, Clone, Default)]
pub struct SimplexTree {
    nodes: Vec<TreeNode>,
    /// Level-0 entries, strictly increasing by label.
    roots: Vec<ChildEntry>,
    /// Node count per depth: the f-vector of the stored complex.
    level_counts: Vec<usize>,
}

impl SimplexTree {
    pub fn new() -> SimplexTree {
        SimplexTree::default()
    }

    /// Preallocates arena space for `additional` more nodes.
    pub fn reserve(&mut self, additional: usize) {
        self.nodes.reserve(additional);
    }

    /// Inserts a child labeled `label` under `parent`, or a level-0 root when
    /// `parent` is `None`. The label must exceed the parent's label and must
    /// not collide with an existing sibling; sibling order is preserved.
    pub fn insert_child(
        &mut self,
        parent: Option<NodeIdx>,
        label: VertexId,
    ) -> Result<NodeIdx, StructuralError> {
        let idx = NodeIdx(self.nodes.len() as u32);
        let entry = ChildEntry { label, node: idx };
        let (depth, siblings) = match parent {
            Some(p) => {
                let parent_node = &mut self.nodes[p.get()];
                if label <= parent_node.label {
                    return Err(StructuralError::LabelOrder {
                        parent: parent_node.label,
                        child: label,
                    });
                }
                (parent_node.depth + 1, &mut parent_node.children)
            }
            None => (0, &mut self.roots),
        };
        // The construction algorithms append in increasing label order, so
        // this search lands past the end; off-order inserts still work.
        match siblings.last() {
            Some(last) if last.label < label => siblings.push(entry),
            _ => match siblings.binary_search_by_key(&label, |c| c.label) {
                Ok(_) => return Err(StructuralError::DuplicateChild(label)),
                Err(pos) => siblings.insert(pos, entry),
            },
        }
        self.nodes.push(TreeNode {
            label,
            depth,
            parent,
            children: Vec::new(),
        });
        let depth = depth as usize;
        if self.level_counts.len() <= depth {
            self.level_counts.resize(depth + 1, 0);
        }
        self.level_counts[depth] += 1;
        Ok(idx)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Largest dimension present, `None` for the empty tree.
    pub fn max_dimension(&self) -> Option<usize> {
        self.level_counts.len().checked_sub(1)
    }

    /// Number of simplices per dimension.
    pub fn f_vector(&self) -> &[usize] {
        &self.level_counts
    }

    pub fn label(&self, node: NodeIdx) -> VertexId {
        self.nodes[node.get()].label
    }

    pub fn depth(&self, node: NodeIdx) -> usize {
        self.nodes[node.get()].depth as usize
    }

    pub fn parent(&self, node: NodeIdx) -> Option<NodeIdx> {
        self.nodes[node.get()].parent
    }

    /// Child labels of a node, strictly increasing.
    pub fn child_labels(&self, node: NodeIdx) -> Vec<VertexId> {
        self.nodes[node.get()]
            .children
            .iter()
            .map(|c| c.label)
            .collect()
    }

    /// Level-0 labels, strictly increasing.
    pub fn root_labels(&self) -> Vec<VertexId> {
        self.roots.iter().map(|c| c.label).collect()
    }

    /// Reconstitutes the simplex represented by a node from its root path.
    pub fn simplex_of(&self, node: NodeIdx) -> Simplex {
        let mut vertices = Vec::with_capacity(self.depth(node) + 1);
        let mut cursor = Some(node);
        while let Some(idx) = cursor {
            let n = &self.nodes[idx.get()];
            vertices.push(n.label);
            cursor = n.parent;
        }
        vertices.reverse();
        Simplex { vertices }
    }

    /// Locates the node whose root path is labeled by `vertices`.
    pub fn find(&self, vertices: &[VertexId]) -> Option<NodeIdx> {
        let (&first, rest) = vertices.split_first()?;
        let mut node = Self::lookup(&self.roots, first)?;
        for &label in rest {
            node = Self::lookup(&self.nodes[node.get()].children, label)?;
        }
        Some(node)
    }

    fn lookup(entries: &[ChildEntry], label: VertexId) -> Option<NodeIdx> {
        entries
            .binary_search_by_key(&label, |c| c.label)
            .ok()
            .map(|pos| entries[pos].node)
    }

    /// True iff the simplex is stored in the tree.
    pub fn contains(&self, simplex: &Simplex) -> bool {
        self.find(simplex.vertices()).is_some()
    }

    /// All depth-k nodes in lexicographic order of their root paths.
    pub fn nodes_at_level(&self, k: usize) -> Vec<NodeIdx> {
        let mut out = Vec::with_capacity(*self.level_counts.get(k).unwrap_or(&0));
        let mut stack: Vec<NodeIdx> = self.roots.iter().rev().map(|c| c.node).collect();
        while let Some(idx) = stack.pop() {
            let node = &self.nodes[idx.get()];
            let depth = node.depth as usize;
            if depth == k {
                out.push(idx);
            } else if depth < k {
                stack.extend(node.children.iter().rev().map(|c| c.node));
            }
        }
        out
    }

    /// All k-simplices in lexicographic order of their vertex sequences.
    pub fn simplices_at_level(&self, k: usize) -> Vec<Simplex> {
        let mut out = Vec::with_capacity(*self.level_counts.get(k).unwrap_or(&0));
        let mut path = Vec::with_capacity(k + 1);
        for root in &self.roots {
            self.collect_level(root.node, k, &mut path, &mut out);
        }
        out
    }

    fn collect_level(&self, node: NodeIdx, k: usize, path: &mut Vec<VertexId>, out: &mut Vec<Simplex>) {
        let n = &self.nodes[node.get()];
        path.push(n.label);
        if n.depth as usize == k {
            out.push(Simplex {
                vertices: path.clone(),
            });
        } else {
            for child in &n.children {
                self.collect_level(child.node, k, path, out);
            }
        }
        path.pop();
    }

    /// Every stored simplex in canonical order: by dimension, then
    /// lexicographic. Two trees hold the same complex iff these sequences
    /// are equal.
    pub fn as_simplex_set(&self) -> Vec<Simplex> {
        let mut out = Vec::with_capacity(self.nodes.len());
        for k in 0..self.level_counts.len() {
            out.extend(self.simplices_at_level(k));
        }
        out
    }

    /// Canonical text dump: one simplex per line, vertices space-separated,
    /// lines in canonical order, trailing newline when nonempty.
    pub fn canonical_dump(&self) -> String {
        let mut out = String::new();
        for simplex in self.as_simplex_set() {
            let mut first = true;
            for v in simplex.vertices() {
                if !first {
                    out.push(' ');
                }
                out.push_str(&v.to_string());
                first = false;
            }
            out.push('\n');
        }
        out
    }

    /// Splices a single-root tree under this tree's root sentinel. The
    /// incoming root label must exceed every already-attached root label, so
    /// repeated attachment in vertex order reproduces the serial layout.
    pub fn attach_subtree(&mut self, sub: SimplexTree) -> Result<(), StructuralError> {
        if sub.roots.len() != 1 {
            return Err(StructuralError::NotASubtree(sub.roots.len()));
        }
        let sub_root = sub.roots[0];
        if let Some(last) = self.roots.last() {
            if last.label >= sub_root.label {
                return Err(StructuralError::RootOrder {
                    last: last.label,
                    root: sub_root.label,
                });
            }
        }
        let offset = self.nodes.len() as u32;
        let rebase = |idx: NodeIdx| NodeIdx(idx.0 + offset);
        self.nodes.extend(sub.nodes.into_iter().map(|mut node| {
            node.parent = node.parent.map(rebase);
            for child in &mut node.children {
                child.node = rebase(child.node);
            }
            node
        }));
        self.roots.push(ChildEntry {
            label: sub_root.label,
            node: rebase(sub_root.node),
        });
        if self.level_counts.len() < sub.level_counts.len() {
            self.level_counts.resize(sub.level_counts.len(), 0);
        }
        for (k, count) in sub.level_counts.iter().enumerate() {
            self.level_counts[k] += count;
        }
        Ok(())
    }

    /// Full structural audit: strictly increasing root paths and sibling
    /// orders, consistent parent/depth links, and level counts that match a
    /// fresh traversal. Used by tests; O(nodes).
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut seen = vec![0usize; self.level_counts.len()];
        let mut stack: Vec<NodeIdx> = self.roots.iter().map(|c| c.node).collect();
        Self::check_sibling_order(&self.roots)?;
        while let Some(idx) = stack.pop() {
            let node = &self.nodes[idx.get()];
            let depth = node.depth as usize;
            if depth >= seen.len() {
                return Err(format!("node depth {depth} outside recorded levels"));
            }
            seen[depth] += 1;
            if let Some(p) = node.parent {
                let parent = &self.nodes[p.get()];
                if parent.label >= node.label {
                    return Err(format!(
                        "path not increasing: parent {} >= child {}",
                        parent.label, node.label
                    ));
                }
                if parent.depth + 1 != node.depth {
                    return Err(format!("depth link broken at node {}", node.label));
                }
            } else if node.depth != 0 {
                return Err(format!("root {} has nonzero depth", node.label));
            }
            Self::check_sibling_order(&node.children)?;
            for child in &node.children {
                if self.nodes[child.node.get()].label != child.label {
                    return Err(format!("child entry label mismatch under {}", node.label));
                }
                stack.push(child.node);
            }
        }
        if seen != self.level_counts {
            return Err(format!(
                "level counts {:?} disagree with traversal {:?}",
                self.level_counts, seen
            ));
        }
        Ok(())
    }

    fn check_sibling_order(entries: &[ChildEntry]) -> Result<(), String> {
        for pair in entries.windows(2) {
            if pair[0].label >= pair[1].label {
                return Err(format!(
                    "sibling order violated: {} before {}",
                    pair[0].label, pair[1].label
                ));
            }
        }
        Ok(())
    }
}
