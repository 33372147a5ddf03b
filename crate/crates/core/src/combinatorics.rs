//! The pairing combinatorics behind the table-lookup construction.
//!
//! Pure functions on simplices: the missing-pair computation, the
//! lexicographic orders on same-dimension simplices and on pairs of them,
//! and the minimal-pair decomposition of a simplex into its two smallest
//! facets. Together these are why the table-lookup expansion can certify a
//! new (k+1)-simplex with a single edge probe and never creates the same
//! simplex twice: every (k+1)-simplex corresponds to exactly one minimal
//! pair of k-faces, and that pair determines the one edge left to check.

use std::cmp::Ordering;

use thiserror::Error;

use crate::graph::VertexId;
use crate::simplex_tree::Simplex;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CombinatoricsError {
    #[error("simplices have different dimensions ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("expected |s| = |s0| + 1 = |s1| + 1, got |s| = {s}, |s0| = {s0}, |s1| = {s1}")]
    FacetSize { s: usize, s0: usize, s1: usize },
    #[error("the two facets must be distinct")]
    EqualFacets,
    #[error("{0} is not a facet of the given simplex")]
    NotAFacet(Simplex),
    #[error("minimal-pair decomposition needs at least 3 vertices, got {0}")]
    TooSmall(usize),
}

/// An ordered pair of distinct same-dimension simplices with
/// `first < second` in the simplex lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexPair {
    first: Simplex,
    second: Simplex,
}

impl SimplexPair {
    /// Orders and wraps two distinct simplices of equal dimension.
    pub fn new(a: Simplex, b: Simplex) -> Result<SimplexPair, CombinatoricsError> {
        match compare_simplices(&a, &b)? {
            Ordering::Less => Ok(SimplexPair {
                first: a,
                second: b,
            }),
            Ordering::Greater => Ok(SimplexPair {
                first: b,
                second: a,
            }),
            Ordering::Equal => Err(CombinatoricsError::EqualFacets),
        }
    }

    pub fn first(&self) -> &Simplex {
        &self.first
    }

    pub fn second(&self) -> &Simplex {
        &self.second
    }
}

/// The decomposition of a simplex `tau` into its minimal pair of facets.
///
/// With `tau = {t_0 < ... < t_{k+1}}`: `sigma0` drops the largest vertex,
/// `sigma1` drops the second-largest, `rho` is their shared minimal
/// (k-1)-face, and `(v0, v1) = (t_k, t_{k+1})` is the missing pair - the one
/// vertex pair of `tau` contained in neither facet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalPairDecomposition {
    pub sigma0: Simplex,
    pub sigma1: Simplex,
    pub rho: Simplex,
    pub v0: VertexId,
    pub v1: VertexId,
}

impl MinimalPairDecomposition {
    pub fn pair(&self) -> Result<SimplexPair, CombinatoricsError> {
        SimplexPair::new(self.sigma0.clone(), self.sigma1.clone())
    }
}

/// Lexicographic comparison of two simplices of the same dimension.
/// Comparing across dimensions is a caller error, not an ordering.
pub fn compare_simplices(a: &Simplex, b: &Simplex) -> Result<Ordering, CombinatoricsError> {
    if a.dimension() != b.dimension() {
        return Err(CombinatoricsError::DimensionMismatch(
            a.dimension(),
            b.dimension(),
        ));
    }
    Ok(a.vertices().cmp(b.vertices()))
}

/// Lexicographic comparison of two [`SimplexPair`]s of the same dimension:
/// first components decide, then second components.
pub fn compare_pairs(p: &SimplexPair, q: &SimplexPair) -> Result<Ordering, CombinatoricsError> {
    Ok(compare_simplices(p.first(), q.first())?
        .then(compare_simplices(p.second(), q.second())?))
}

/// Given an (n+1)-set `s` and two distinct n-subsets `s0`, `s1`, returns the
/// unique 2-subset of `s` contained in neither: `(s \ s0, s \ s1)`, as an
/// increasing pair.
pub fn missing_pair(
    s: &Simplex,
    s0: &Simplex,
    s1: &Simplex,
) -> Result<(VertexId, VertexId), CombinatoricsError> {
    if s.vertices().len() != s0.vertices().len() + 1 || s0.vertices().len() != s1.vertices().len()
    {
        return Err(CombinatoricsError::FacetSize {
            s: s.vertices().len(),
            s0: s0.vertices().len(),
            s1: s1.vertices().len(),
        });
    }
    if s0 == s1 {
        return Err(CombinatoricsError::EqualFacets);
    }
    let t0 = set_difference_single(s, s0)?;
    let t1 = set_difference_single(s, s1)?;
    Ok(if t0 < t1 { (t0, t1) } else { (t1, t0) })
}

/// The single element of `s \ facet`; errors unless `facet` is a facet of `s`.
fn set_difference_single(s: &Simplex, facet: &Simplex) -> Result<VertexId, CombinatoricsError> {
    let mut missing = None;
    let mut facet_iter = facet.vertices().iter().peekable();
    for &v in s.vertices() {
        match facet_iter.peek() {
            Some(&&f) if f == v => {
                facet_iter.next();
            }
            _ => {
                if missing.replace(v).is_some() {
                    return Err(CombinatoricsError::NotAFacet(facet.clone()));
                }
            }
        }
    }
    match (missing, facet_iter.next()) {
        (Some(v), None) => Ok(v),
        _ => Err(CombinatoricsError::NotAFacet(facet.clone())),
    }
}

/// The minimal-pair decomposition of `tau` (at least 3 vertices): its two
/// lexicographically smallest facets, obtained in closed form by dropping
/// the largest and second-largest vertices.
///
/// Among all facet pairs whose union is `tau`, the result is minimal under
/// [`compare_pairs`]; the map `tau -> (sigma0, sigma1)` is injective on each
/// dimension level. The enumerate-and-minimize definition is retained in the
/// test suite as the oracle for this shortcut.
pub fn minimal_pair(tau: &Simplex) -> Result<MinimalPairDecomposition, CombinatoricsError> {
    let len = tau.vertices().len();
    if len < 3 {
        return Err(CombinatoricsError::TooSmall(len));
    }
    let sigma0 = tau.face_without(len - 1).expect("len >= 3");
    let sigma1 = tau.face_without(len - 2).expect("len >= 3");
    let rho = sigma0.face_without(len - 2).expect("len >= 3");
    Ok(MinimalPairDecomposition {
        sigma0,
        sigma1,
        rho,
        v0: tau.vertices()[len - 2],
        v1: tau.vertices()[len - 1],
    })
}
