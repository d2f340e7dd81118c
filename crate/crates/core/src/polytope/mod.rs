//! Exact convex polytopes in vertex and halfspace form.
//!
//! Every body built by this crate is full-dimensional with the origin in its
//! interior, so facet enumeration is vertex enumeration of the polar and all
//! halfspaces come out normalized to `⟨a, x⟩ ≤ 1`.

mod dd;
mod volume;

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::linalg;
use crate::lp;
use crate::rational::{dot, lex_cmp, rational_to_f64, Field, Rational};

pub use volume::{facet_cone_volumes, triangulate_boundary};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("empty point set")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("origin is not an interior point")]
    OriginNotInterior,
    #[error("halfspace system is unbounded")]
    Unbounded,
    #[error("zonotope in dimension {dim} needs at least {dim} generators, got {found}")]
    TooFewGenerators { dim: usize, found: usize },
    #[error("point is not on the boundary ({0})")]
    PointNotOnBoundary(&'static str),
    #[error("dimension must be positive")]
    ZeroDimension,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VPolytope<F = Rational> {
    dim: usize,
    vertices: Vec<Vec<F>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Halfspace<F = Rational> {
    pub normal: Vec<F>,
    pub offset: F,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HPolytope<F = Rational> {
    dim: usize,
    halfspaces: Vec<Halfspace<F>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceQueryResult {
    pub dimension: usize,
    pub vertex_indices: Vec<usize>,
    pub supporting_facets: Vec<usize>,
}

fn check_dims<F>(dim: usize, points: &[Vec<F>]) -> Result<(), PolytopeError> {
    if dim == 0 {
        return Err(PolytopeError::ZeroDimension);
    }
    match points.iter().find(|p| p.len() != dim) {
        Some(p) => Err(PolytopeError::DimensionMismatch {
            expected: dim,
            found: p.len(),
        }),
        None => Ok(()),
    }
}

fn sort_lex<F: Field>(points: &mut Vec<Vec<F>>) {
    points.sort_by(|a, b| lex_cmp(a, b));
    points.dedup_by(|a, b| lex_cmp(a, b) == Ordering::Equal);
}

impl<F: Field> VPolytope<F> {
    /// Wraps a point list without removing redundant points.
    pub fn new(dim: usize, vertices: Vec<Vec<F>>) -> Result<Self, PolytopeError> {
        check_dims(dim, &vertices)?;
        Ok(Self { dim, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<F>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, point: &[F]) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| lex_cmp(v, point) == Ordering::Equal)
    }

    /// `⟨v, y⟩ ≤ 1` for every listed point; no interiority check.
    pub fn polar_unchecked(&self) -> HPolytope<F> {
        HPolytope {
            dim: self.dim,
            halfspaces: self
                .vertices
                .iter()
                .map(|v| Halfspace {
                    normal: v.clone(),
                    offset: F::one_value(),
                })
                .collect(),
        }
    }

    pub fn map_linear(&self, matrix: &[Vec<F>]) -> Self {
        Self {
            dim: self.dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| linalg::mat_vec(matrix, v))
                .collect(),
        }
    }
}

impl<F: Field> HPolytope<F> {
    pub fn new(dim: usize, halfspaces: Vec<Halfspace<F>>) -> Result<Self, PolytopeError> {
        if dim == 0 {
            return Err(PolytopeError::ZeroDimension);
        }
        if let Some(h) = halfspaces.iter().find(|h| h.normal.len() != dim) {
            return Err(PolytopeError::DimensionMismatch {
                expected: dim,
                found: h.normal.len(),
            });
        }
        Ok(Self { dim, halfspaces })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace<F>] {
        &self.halfspaces
    }

    pub fn len(&self) -> usize {
        self.halfspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halfspaces.is_empty()
    }

    pub fn contains(&self, x: &[F]) -> bool {
        self.halfspaces
            .iter()
            .all(|h| !dot(&h.normal, x).minus(&h.offset).is_positive_value())
    }
}

/// Vertex index sets of each facet: `incidence[j]` lists the vertices tight on halfspace `j`.
pub fn facet_incidence<F: Field>(p: &VPolytope<F>, h: &HPolytope<F>) -> Vec<Vec<usize>> {
    h.halfspaces
        .iter()
        .map(|hs| {
            p.vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| dot(&hs.normal, v).minus(&hs.offset).is_zero_value())
                .map(|(i, _)| i)
                .collect()
        })
        .collect()
}

/// Exactly the extreme points of `conv(points)`, sorted lexicographically.
pub fn reduce_to_vertices(points: &[Vec<Rational>]) -> Result<VPolytope, PolytopeError> {
    let first = points.first().ok_or(PolytopeError::EmptyInput)?;
    let dim = first.len();
    check_dims(dim, points)?;
    let mut pts = points.to_vec();
    sort_lex(&mut pts);
    let extreme: Vec<Vec<Rational>> = (0..pts.len())
        .filter(|&i| !in_hull_of_others(&pts, i))
        .map(|i| pts[i].clone())
        .collect();
    Ok(VPolytope {
        dim,
        vertices: extreme,
    })
}

fn in_hull_of_others(pts: &[Vec<Rational>], i: usize) -> bool {
    let others: Vec<&Vec<Rational>> = pts
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i)
        .map(|(_, p)| p)
        .collect();
    if others.is_empty() {
        return false;
    }
    let dim = pts[i].len();
    let mut a: Vec<Vec<Rational>> = (0..dim)
        .map(|r| others.iter().map(|q| q[r].clone()).collect())
        .collect();
    a.push(vec![Rational::from_integer(1.into()); others.len()]);
    let mut b = pts[i].clone();
    b.push(Rational::from_integer(1.into()));
    lp::feasible(&a, &b)
}

fn homogenized_rows<F: Field>(h: &HPolytope<F>) -> Vec<Vec<F>> {
    let n = h.dim;
    let mut rows = Vec::with_capacity(h.halfspaces.len() + 1);
    let mut t_row = vec![F::zero_value(); n + 1];
    t_row[n] = F::one_value();
    rows.push(t_row);
    for hs in &h.halfspaces {
        let mut r: Vec<F> = hs.normal.iter().map(Field::negated).collect();
        r.push(hs.offset.clone());
        rows.push(r);
    }
    rows
}

/// Vertices of a bounded full-dimensional halfspace system.
pub fn vertex_enumeration<F: Field>(h: &HPolytope<F>) -> Result<VPolytope<F>, PolytopeError> {
    let n = h.dim;
    let rays = dd::extreme_rays(&homogenized_rows(h), n + 1).map_err(|_| PolytopeError::Unbounded)?;
    let mut vertices = Vec::with_capacity(rays.len());
    for r in rays {
        let t = &r[n];
        if !t.is_positive_value() {
            return Err(PolytopeError::Unbounded);
        }
        vertices.push(r[..n].iter().map(|x| x.divide(t)).collect::<Vec<F>>());
    }
    sort_lex(&mut vertices);
    if linalg::affine_rank(&vertices) != Some(n) {
        return Err(PolytopeError::NotFullDimensional);
    }
    Ok(VPolytope { dim: n, vertices })
}

/// Irredundant facets `⟨a, x⟩ ≤ 1` of a full-dimensional polytope with the origin inside.
pub fn hull_to_hrep<F: Field>(p: &VPolytope<F>) -> Result<HPolytope<F>, PolytopeError> {
    if linalg::affine_rank(&p.vertices) != Some(p.dim) {
        return Err(PolytopeError::NotFullDimensional);
    }
    let dual = match vertex_enumeration(&p.polar_unchecked()) {
        Ok(v) => v,
        Err(PolytopeError::Unbounded | PolytopeError::NotFullDimensional) => {
            return Err(PolytopeError::OriginNotInterior)
        }
        Err(e) => return Err(e),
    };
    Ok(dual.polar_unchecked())
}

/// `P° = {y : ⟨v, y⟩ ≤ 1 for every vertex v}`, one halfspace per vertex.
pub fn polar<F: Field>(p: &VPolytope<F>) -> Result<HPolytope<F>, PolytopeError> {
    let h = p.polar_unchecked();
    match vertex_enumeration(&h) {
        Ok(_) => Ok(h),
        Err(PolytopeError::Unbounded | PolytopeError::NotFullDimensional) => {
            Err(PolytopeError::OriginNotInterior)
        }
        Err(e) => Err(e),
    }
}

/// Polar of a halfspace system with positive offsets: the extreme points of `{a/b}`.
pub fn polar_of_hrep(h: &HPolytope) -> Result<VPolytope, PolytopeError> {
    let mut points = Vec::with_capacity(h.halfspaces.len());
    for hs in &h.halfspaces {
        if !hs.offset.is_positive_value() {
            return Err(PolytopeError::OriginNotInterior);
        }
        points.push(hs.normal.iter().map(|a| a / &hs.offset).collect::<Vec<_>>());
    }
    let v = reduce_to_vertices(&points)?;
    if linalg::affine_rank(&v.vertices) != Some(v.dim) {
        return Err(PolytopeError::Unbounded);
    }
    Ok(v)
}

/// Exact volume from matching vertex and facet descriptions.
pub fn volume<F: Field>(p: &VPolytope<F>, h: &HPolytope<F>) -> Result<F, PolytopeError> {
    if p.dim != h.dim {
        return Err(PolytopeError::DimensionMismatch {
            expected: p.dim,
            found: h.dim,
        });
    }
    if linalg::affine_rank(&p.vertices) != Some(p.dim) {
        return Err(PolytopeError::NotFullDimensional);
    }
    Ok(facet_cone_volumes(p, h)
        .into_iter()
        .fold(F::zero_value(), |acc, v| acc.plus(&v)))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Volume of `Σ [0, u_i]` as `Σ_{|I|=n} |det(u_i)_{i∈I}|`.
pub fn zonotope_volume(generators: &[Vec<Rational>]) -> Result<Rational, PolytopeError> {
    let dim = generators.first().map_or(0, Vec::len);
    check_dims(dim, generators)?;
    if generators.len() < dim {
        return Err(PolytopeError::TooFewGenerators {
            dim,
            found: generators.len(),
        });
    }
    Ok(combinations(generators.len(), dim)
        .into_iter()
        .map(|idx| {
            let rows: Vec<Vec<Rational>> = idx.iter().map(|&i| generators[i].clone()).collect();
            linalg::determinant(&rows).abs()
        })
        .fold(<Rational as Zero>::zero(), |acc, d| acc + d))
}

/// The face whose relative interior contains boundary point `x`.
pub fn face_containing<F: Field>(
    p: &VPolytope<F>,
    h: &HPolytope<F>,
    x: &[F],
) -> Result<FaceQueryResult, PolytopeError> {
    if x.len() != h.dim {
        return Err(PolytopeError::DimensionMismatch {
            expected: h.dim,
            found: x.len(),
        });
    }
    let mut tight = Vec::new();
    for (j, hs) in h.halfspaces.iter().enumerate() {
        let slack = dot(&hs.normal, x).minus(&hs.offset);
        if slack.is_positive_value() {
            return Err(PolytopeError::PointNotOnBoundary("exterior"));
        }
        if slack.is_zero_value() {
            tight.push(j);
        }
    }
    if tight.is_empty() {
        return Err(PolytopeError::PointNotOnBoundary("interior"));
    }
    let vertex_indices: Vec<usize> = p
        .vertices
        .iter()
        .enumerate()
        .filter(|(_, v)| {
            tight.iter().all(|&j| {
                let hs = &h.halfspaces[j];
                dot(&hs.normal, v).minus(&hs.offset).is_zero_value()
            })
        })
        .map(|(i, _)| i)
        .collect();
    let pts: Vec<Vec<F>> = vertex_indices.iter().map(|&i| p.vertices[i].clone()).collect();
    Ok(FaceQueryResult {
        dimension: linalg::affine_rank(&pts).unwrap_or(0),
        vertex_indices,
        supporting_facets: tight,
    })
}

/// Every facet has exactly `dim` vertices.
pub fn is_simplicial<F: Field>(p: &VPolytope<F>, h: &HPolytope<F>) -> bool {
    facet_incidence(p, h).iter().all(|f| f.len() == p.dim)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub std_error: f64,
    /// Three standard errors.
    pub half_width: f64,
    pub samples: usize,
}

/// Hit-or-miss estimate over the bounding box of the vertex set; deterministic per seed.
pub fn monte_carlo_volume(
    h: &HPolytope,
    samples: usize,
    seed: u64,
) -> Result<MonteCarloEstimate, PolytopeError> {
    let verts = vertex_enumeration(h)?;
    let n = h.dim;
    let pts: Vec<Vec<f64>> = verts
        .vertices
        .iter()
        .map(|v| v.iter().map(rational_to_f64).collect())
        .collect();
    let lo: Vec<f64> = (0..n)
        .map(|i| pts.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min))
        .collect();
    let hi: Vec<f64> = (0..n)
        .map(|i| pts.iter().map(|p| p[i]).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let box_volume: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();
    let rows: Vec<(Vec<f64>, f64)> = h
        .halfspaces
        .iter()
        .map(|hs| {
            (
                hs.normal.iter().map(rational_to_f64).collect(),
                rational_to_f64(&hs.offset),
            )
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![0.0; n];
    let mut hits = 0usize;
    for _ in 0..samples {
        for i in 0..n {
            x[i] = rng.gen_range(lo[i]..=hi[i]);
        }
        let inside = rows
            .iter()
            .all(|(a, b)| a.iter().zip(&x).map(|(p, q)| p * q).sum::<f64>() <= *b);
        if inside {
            hits += 1;
        }
    }
    let frac = hits as f64 / samples.max(1) as f64;
    let std_error = box_volume * (frac * (1.0 - frac) / samples.max(1) as f64).sqrt();
    Ok(MonteCarloEstimate {
        estimate: box_volume * frac,
        std_error,
        half_width: 3.0 * std_error,
        samples,
    })
}
