//! Immutable undirected graphs with a total vertex order.
//!
//! Every construction algorithm in this crate reads adjacency from one of
//! these graphs. Edges are stored twice over: a dense bit table for O(1)
//! probes (the hot path of the table-lookup kernel) and sorted per-vertex
//! neighbor lists for the merge-based kernels. Paying memory for both keeps
//! the algorithm comparison about the algorithms, not the storage.

use std::fmt;

use thiserror::Error;

/// A vertex, identified by a dense index in `[0, n)`.
///
/// The total order used everywhere (upper neighbors, simplex paths, pair
/// ordering) is the integer order on indices.
#[repr(transparent)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline(always)]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

/// Errors raised while building or parsing a graph.
#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("edge ({0}, {1}) out of range for {2} vertices")]
    VertexOutOfRange(u32, u32, usize),
    #[error("self-loop ({0}, {0}) is not allowed")]
    SelfLoop(u32),
    #[error("edge probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("epsilon {0} must be a non-negative real")]
    InvalidEpsilon(f64),
    #[error("point {index} has dimension {got}, expected {expected}")]
    HeterogeneousPoint {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("point cloud points must have dimension >= 1")]
    EmptyPoint,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Seedable 64-bit generator used for random graphs.
///
/// This is SplitMix64 (Steele, Lea & Flood's `splitmix64` finalizer). It is
/// fixed as the crate's generator: identical seeds produce identical graphs
/// on every platform and in every future release.
#[derive(Debug, Clone)]
pub(crate) struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub(crate) fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    #[inline]
    pub(crate) fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub(crate) fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// An immutable undirected graph on vertices `0..n`.
///
/// Invariants established at construction:
/// - the bit table is symmetric with an empty diagonal,
/// - `adjacency(u)` is strictly increasing and mirrors the bit table,
/// - `largest_neighbor(u)` is the last entry of `adjacency(u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edge_count: usize,
    /// Row-major n*n bit table; bit (u*n + v) set iff {u,v} is an edge.
    bits: Vec<u64>,
    /// CSR neighbor storage: neighbors of u are
    /// `neighbors[offsets[u]..offsets[u + 1]]`, strictly increasing.
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
    /// Absolute index where the upper (greater-than-u) neighbors of u begin.
    upper_start: Vec<usize>,
    /// The table L: largest neighbor of each vertex, absent for isolated ones.
    largest: Vec<Option<VertexId>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate and reversed pairs
    /// collapse to one undirected edge; out-of-range endpoints and
    /// self-loops are rejected.
    pub fn build(n: usize, edges: &[(u32, u32)]) -> Result<Graph, GraphError> {
        let mut bits = vec![0u64; Self::bit_words(n)];
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            Self::set_bit(&mut bits, n, u as usize, v as usize);
            Self::set_bit(&mut bits, n, v as usize, u as usize);
        }
        Ok(Self::from_bits(n, bits))
    }

    /// Samples an Erdős–Rényi graph G(n, p).
    ///
    /// Each unordered pair (u, v), u < v, visited in lexicographic order,
    /// consumes exactly one SplitMix64 draw and becomes an edge when the
    /// draw is below `p`. Identical `(n, p, seed)` triples therefore yield
    /// bit-identical graphs across runs and platforms.
    pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(GraphError::InvalidProbability(p));
        }
        let mut rng = SplitMix64::new(seed);
        let mut bits = vec![0u64; Self::bit_words(n)];
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.next_f64() < p {
                    Self::set_bit(&mut bits, n, u, v);
                    Self::set_bit(&mut bits, n, v, u);
                }
            }
        }
        Ok(Self::from_bits(n, bits))
    }

    /// Thresholds a point cloud at distance `epsilon`: vertex i is point i,
    /// and (i, j) is an edge iff the Euclidean distance is at most epsilon.
    pub fn from_point_cloud(pc: &PointCloud, epsilon: f64) -> Result<Graph, GraphError> {
        if epsilon.is_nan() || epsilon < 0.0 {
            return Err(GraphError::InvalidEpsilon(epsilon));
        }
        let n = pc.len();
        let eps_sq = epsilon * epsilon;
        let mut bits = vec![0u64; Self::bit_words(n)];
        for i in 0..n {
            for j in (i + 1)..n {
                let d_sq: f64 = pc.points[i]
                    .iter()
                    .zip(&pc.points[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                if d_sq <= eps_sq {
                    Self::set_bit(&mut bits, n, i, j);
                    Self::set_bit(&mut bits, n, j, i);
                }
            }
        }
        Ok(Self::from_bits(n, bits))
    }

    fn bit_words(n: usize) -> usize {
        (n * n).div_ceil(64)
    }

    #[inline]
    fn set_bit(bits: &mut [u64], n: usize, u: usize, v: usize) {
        let idx = u * n + v;
        bits[idx >> 6] |= 1u64 << (idx & 63);
    }

    /// Freezes a validated bit table into the final CSR + table-L form.
    fn from_bits(n: usize, bits: Vec<u64>) -> Graph {
        let mut offsets = Vec::with_capacity(n + 1);
        let mut neighbors = Vec::new();
        let mut upper_start = Vec::with_capacity(n);
        let mut largest = Vec::with_capacity(n);
        let mut edge_count = 0usize;
        offsets.push(0);
        for u in 0..n {
            let mut first_upper = None;
            for v in 0..n {
                let idx = u * n + v;
                if bits[idx >> 6] >> (idx & 63) & 1 == 1 {
                    if v > u {
                        edge_count += 1;
                        first_upper.get_or_insert(neighbors.len());
                    }
                    neighbors.push(VertexId(v as u32));
                }
            }
            offsets.push(neighbors.len());
            upper_start.push(first_upper.unwrap_or(neighbors.len()));
            largest.push(neighbors[offsets[u]..].last().copied());
        }
        Graph {
            vertex_count: n,
            edge_count,
            bits,
            offsets,
            neighbors,
            upper_start,
            largest,
        }
    }

    #[inline(always)]
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    #[inline(always)]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Iterates vertices in the total order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count as u32).map(VertexId)
    }

    /// Constant-time edge probe.
    #[inline(always)]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        assert!(
            u.index() < self.vertex_count && v.index() < self.vertex_count,
            "vertex out of range"
        );
        let idx = u.index() * self.vertex_count + v.index();
        self.bits[idx >> 6] >> (idx & 63) & 1 == 1
    }

    /// All neighbors of `u`, strictly increasing.
    #[inline]
    pub fn adjacency(&self, u: VertexId) -> &[VertexId] {
        &self.neighbors[self.offsets[u.index()]..self.offsets[u.index() + 1]]
    }

    /// Neighbors of `u` strictly greater than `u`, in increasing order.
    #[inline(always)]
    pub fn upper_neighbors(&self, u: VertexId) -> &[VertexId] {
        &self.neighbors[self.upper_start[u.index()]..self.offsets[u.index() + 1]]
    }

    /// The table L: the largest neighbor of `u`, absent when `u` is isolated.
    #[inline(always)]
    pub fn largest_neighbor(&self, u: VertexId) -> Option<VertexId> {
        self.largest[u.index()]
    }

    /// Edges (u, v) with u < v in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices()
            .flat_map(move |u| self.upper_neighbors(u).iter().map(move |&v| (u, v)))
    }

    /// Parses the edge-list text format (see [`Graph::write_edge_list`]).
    ///
    /// The first non-comment line is `n m`, followed by `m` lines `u v`.
    /// Lines starting with `#` and blank lines are skipped.
    pub fn read_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_ascii_whitespace();
            let parse = |field: Option<&str>, lineno: usize| -> Result<u64, GraphError> {
                field
                    .ok_or_else(|| GraphError::Parse {
                        line: lineno + 1,
                        message: "expected two integers".into(),
                    })?
                    .parse::<u64>()
                    .map_err(|e| GraphError::Parse {
                        line: lineno + 1,
                        message: format!("invalid integer: {e}"),
                    })
            };
            let a = parse(fields.next(), lineno)?;
            let b = parse(fields.next(), lineno)?;
            if fields.next().is_some() {
                return Err(GraphError::Parse {
                    line: lineno + 1,
                    message: "trailing fields after pair".into(),
                });
            }
            match header {
                None => header = Some((a as usize, b as usize)),
                Some((n, _)) => {
                    if a >= n as u64 || b >= n as u64 {
                        return Err(GraphError::Parse {
                            line: lineno + 1,
                            message: format!("vertex {} out of range (n = {n})", a.max(b)),
                        });
                    }
                    edges.push((a as u32, b as u32));
                }
            }
        }
        let (n, m) = header.ok_or(GraphError::Parse {
            line: 1,
            message: "missing `n m` header".into(),
        })?;
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: text.lines().count(),
                message: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Graph::build(n, &edges)
    }

    /// Canonical edge-list text: `n m` header, then one `u v` line per edge
    /// with u < v in lexicographic order, trailing newline included.
    pub fn write_edge_list(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} {}\n", self.vertex_count, self.edge_count));
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// A finite set of points in a common d-dimensional Euclidean space.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Vec<f64>>,
}

impl PointCloud {
    /// Wraps a list of coordinate vectors, rejecting mixed dimensions.
    pub fn new(points: Vec<Vec<f64>>) -> Result<PointCloud, GraphError> {
        if let Some(first) = points.first() {
            if first.is_empty() {
                return Err(GraphError::EmptyPoint);
            }
            let expected = first.len();
            for (index, pt) in points.iter().enumerate() {
                if pt.len() != expected {
                    return Err(GraphError::HeterogeneousPoint {
                        index,
                        got: pt.len(),
                        expected,
                    });
                }
            }
        }
        Ok(PointCloud { points })
    }

    /// Parses CSV text: one point per line, comma-separated decimal floats,
    /// no header.
    pub fn read_csv(text: &str) -> Result<PointCloud, GraphError> {
        let mut points = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let point = line
                .split(',')
                .map(|field| {
                    field.trim().parse::<f64>().map_err(|e| GraphError::Parse {
                        line: lineno + 1,
                        message: format!("invalid coordinate: {e}"),
                    })
                })
                .collect::<Result<Vec<f64>, _>>()?;
            points.push(point);
        }
        PointCloud::new(points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }
}
