//! Volume products `P(M) = |B_F(M)| · |B_Lip0(M)|` and the necessary
//! conditions on their extremizers.

mod search;

use serde::Serialize;

use crate::free_space::{free_ball, molecule, FreeBallModel};
use crate::io::{ser_rational, Exact};
use crate::metric::{canonical_graph, diamond, MetricSpace};
use crate::polytope::{self, facet_incidence, PolytopeError, VPolytope};
use crate::rational::{binomial, factorial, int, mahler_floor, Field, Rational};
use crate::structure::blocks;

pub use search::{extremal_search, Objective, SearchConfig, SearchError, SearchMode, SearchResult, TraceEntry};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductFlags {
    pub strict_triangles: bool,
    pub simplicial: bool,
    pub all_bridges: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VolumeProductReport {
    pub n: usize,
    #[serde(serialize_with = "ser_rational")]
    pub vol_free: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub vol_lip: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub product: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub mahler_floor: Rational,
    /// `product − mahler_floor`, signed.
    #[serde(serialize_with = "ser_rational")]
    pub gap: Rational,
    pub flags: ProductFlags,
}

impl VolumeProductReport {
    pub fn product_exact(&self) -> Exact {
        Exact::from(&self.product)
    }
}

/// Both volumes of a model, sharing one vertex enumeration.
pub fn ball_volumes(model: &FreeBallModel) -> (Rational, Rational) {
    let facets = model.facets();
    let vol_free = polytope::volume(&model.vrep, &facets).expect("free ball is full-dimensional");
    let vol_lip = polytope::volume(model.lip_vertices(), &model.hrep).expect("Lipschitz ball is full-dimensional");
    (vol_free, vol_lip)
}

pub fn volume_product(m: &MetricSpace) -> VolumeProductReport {
    let n = m.dim();
    if n == 0 {
        // both balls are the single point of ℝ⁰, with unit volume
        return VolumeProductReport {
            n,
            vol_free: int(1),
            vol_lip: int(1),
            product: int(1),
            mahler_floor: int(1),
            gap: int(0),
            flags: ProductFlags {
                strict_triangles: true,
                simplicial: true,
                all_bridges: true,
            },
        };
    }
    let model = free_ball(m).expect("n >= 1");
    let (vol_free, vol_lip) = ball_volumes(&model);
    let product = &vol_free * &vol_lip;
    let floor = mahler_floor(n);
    let gap = &product - &floor;
    let minimizer = minimizer_conditions_of(&model);
    VolumeProductReport {
        n,
        vol_free,
        vol_lip,
        product,
        mahler_floor: floor,
        gap,
        flags: ProductFlags {
            strict_triangles: m.all_triangles_strict(),
            simplicial: minimizer.simplicial,
            all_bridges: minimizer.bridge_condition,
        },
    }
}

/// Floating-point volume product of the canonical-graph molecules.
pub fn volume_product_f64(m: &MetricSpace) -> Result<f64, PolytopeError> {
    if m.dim() == 0 {
        return Ok(1.0);
    }
    let g = canonical_graph(m);
    let pts: Vec<Vec<f64>> = g
        .edges()
        .iter()
        .flat_map(|e| [(e.u, e.v), (e.v, e.u)])
        .map(|(i, j)| molecule(m, i, j).iter().map(f64::from_rational).collect())
        .collect();
    let vrep = VPolytope::new(m.dim(), pts)?;
    let hrep = vrep.polar_unchecked();
    let lip = polytope::vertex_enumeration(&hrep)?;
    let facets = lip.polar_unchecked();
    let vf = polytope::volume(&vrep, &facets)?;
    let vl = polytope::volume(&lip, &hrep)?;
    let p = vf * vl;
    if p.is_finite() && p > 0.0 {
        Ok(p)
    } else {
        Err(PolytopeError::NotFullDimensional)
    }
}

/// `(n+1)/n! · C(2n, n)`.
pub fn complete_graph_product(n: usize) -> Rational {
    Rational::new(binomial(2 * n, n) * (n + 1), factorial(n))
}

/// `|B_Lip0(K_{n+1})| = n + 1`.
pub fn complete_graph_lip_volume(n: usize) -> Rational {
    Rational::from_integer((n + 1).into())
}

/// `|B_F(K_{n+1})| = C(2n, n) / n!`.
pub fn complete_graph_free_volume(n: usize) -> Rational {
    Rational::new(binomial(2 * n, n), factorial(n))
}

/// `(P(M1 ◊ M2), n1! n2! / n! · P(M1) P(M2))`.
pub fn diamond_product_identity(m1: &MetricSpace, m2: &MetricSpace) -> (Rational, Rational) {
    let glued = diamond(m1, m2);
    let lhs = volume_product(&glued).product;
    let (n1, n2) = (m1.dim(), m2.dim());
    let coeff = Rational::new(factorial(n1) * factorial(n2), factorial(n1 + n2));
    let rhs = coeff * volume_product(m1).product * volume_product(m2).product;
    (lhs, rhs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximizerConditions {
    pub strict_triangles: bool,
    pub simplicial: bool,
}

pub fn maximizer_conditions(m: &MetricSpace) -> MaximizerConditions {
    let simplicial = m.dim() == 0 || {
        let model = free_ball(m).expect("n >= 1");
        polytope::is_simplicial(&model.vrep, &model.facets())
    };
    MaximizerConditions {
        strict_triangles: m.all_triangles_strict(),
        simplicial,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexBridge {
    /// The vertex `m_{i,j}`.
    pub molecule: (usize, usize),
    /// Every facet containing the vertex is a simplex.
    pub simplicial_star: bool,
    pub is_bridge: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimizerConditions {
    pub vertices: Vec<VertexBridge>,
    /// Every vertex with a simplicial star comes from a bridge.
    pub bridge_condition: bool,
    pub simplicial: bool,
    pub is_tree: bool,
    /// `simplicial ⇒ is_tree`.
    pub simplicial_implies_tree: bool,
}

pub fn minimizer_conditions(m: &MetricSpace) -> Result<MinimizerConditions, PolytopeError> {
    Ok(minimizer_conditions_of(&free_ball(m)?))
}

fn minimizer_conditions_of(model: &FreeBallModel) -> MinimizerConditions {
    let n = model.dim();
    let facets = facet_incidence(&model.vrep, &model.facets());
    let bridges: Vec<usize> = blocks(&model.graph)
        .into_iter()
        .filter(|b| b.edges.len() == 1)
        .map(|b| b.edges[0])
        .collect();
    let vertices: Vec<VertexBridge> = model
        .vertex_labels
        .iter()
        .enumerate()
        .map(|(k, &(i, j))| {
            let simplicial_star = facets.iter().filter(|f| f.contains(&k)).all(|f| f.len() == n);
            let edge = model.graph.edge_index(i, j).expect("ball vertices are canonical edges");
            VertexBridge {
                molecule: (i, j),
                simplicial_star,
                is_bridge: bridges.contains(&edge),
            }
        })
        .collect();
    let simplicial = facets.iter().all(|f| f.len() == n);
    let is_tree = model.graph.edges().len() == n;
    MinimizerConditions {
        bridge_condition: vertices.iter().all(|v| !v.simplicial_star || v.is_bridge),
        vertices,
        simplicial,
        is_tree,
        simplicial_implies_tree: !simplicial || is_tree,
    }
}
