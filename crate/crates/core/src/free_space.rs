//! The free-space ball `B_F(M)`, the Lipschitz ball, the boundary operator
//! and the transport (free) norm.

use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::linalg;
use crate::lp::{self, LpOutcome};
use crate::metric::{canonical_graph, metric_segment, MetricSpace, WeightedGraph};
use crate::polytope::{self, HPolytope, PolytopeError, VPolytope};
use crate::rational::{dot, lex_cmp, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Molecule {
    pub i: usize,
    pub j: usize,
    pub coords: Vec<Rational>,
}

/// `(e_i − e_j) / d(i, j)` with `e_root = 0`.
pub fn molecule(m: &MetricSpace, i: usize, j: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); m.dim()];
    let inv = Rational::one() / m.d(i, j);
    if let Some(c) = m.coordinate(i) {
        v[c] += &inv;
    }
    if let Some(c) = m.coordinate(j) {
        v[c] -= &inv;
    }
    v
}

/// All `n(n+1)` ordered molecules, in `(i, j)` order.
pub fn molecules(m: &MetricSpace) -> Vec<Molecule> {
    let n = m.len();
    (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| Molecule {
            i,
            j,
            coords: molecule(m, i, j),
        })
        .collect()
}

/// `B_F(M)` and its polar, built from the canonical-edge molecules.
#[derive(Debug)]
pub struct FreeBallModel {
    pub metric: MetricSpace,
    pub graph: WeightedGraph,
    /// Lexicographically sorted molecules `±m_e` over canonical edges.
    pub vrep: VPolytope,
    /// The Lipschitz ball: one halfspace `⟨m, f⟩ ≤ 1` per vertex of `vrep`.
    pub hrep: HPolytope,
    /// `vertex_labels[k] = (i, j)` when `vrep.vertices()[k] = m_{i,j}`.
    pub vertex_labels: Vec<(usize, usize)>,
    lip_vertices: OnceLock<VPolytope>,
}

impl Clone for FreeBallModel {
    fn clone(&self) -> Self {
        Self {
            metric: self.metric.clone(),
            graph: self.graph.clone(),
            vrep: self.vrep.clone(),
            hrep: self.hrep.clone(),
            vertex_labels: self.vertex_labels.clone(),
            lip_vertices: self.lip_vertices.clone(),
        }
    }
}

impl FreeBallModel {
    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    /// Vertices of the Lipschitz ball (computed once).
    pub fn lip_vertices(&self) -> &VPolytope {
        self.lip_vertices.get_or_init(|| {
            polytope::vertex_enumeration(&self.hrep)
                .expect("the Lipschitz ball of a metric space is bounded and full-dimensional")
        })
    }

    /// Facets of `B_F(M)`, one per Lipschitz-ball vertex.
    pub fn facets(&self) -> HPolytope {
        self.lip_vertices().polar_unchecked()
    }

    pub fn vertex_index(&self, i: usize, j: usize) -> Option<usize> {
        self.vertex_labels.iter().position(|&l| l == (i, j))
    }

    /// Exact Lipschitz norm `max_m ⟨f, m⟩` over molecules.
    pub fn lip_norm(&self, f: &[Rational]) -> Rational {
        self.vrep
            .vertices()
            .iter()
            .map(|m| dot(m, f))
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

pub fn free_ball(m: &MetricSpace) -> Result<FreeBallModel, PolytopeError> {
    if m.dim() == 0 {
        return Err(PolytopeError::ZeroDimension);
    }
    let graph = canonical_graph(m);
    let mut labelled: Vec<((usize, usize), Vec<Rational>)> = graph
        .edges()
        .iter()
        .flat_map(|e| [(e.u, e.v), (e.v, e.u)])
        .map(|(i, j)| ((i, j), molecule(m, i, j)))
        .collect();
    labelled.sort_by(|a, b| lex_cmp(&a.1, &b.1));
    let vertex_labels = labelled.iter().map(|(l, _)| *l).collect();
    let vrep = VPolytope::new(m.dim(), labelled.into_iter().map(|(_, v)| v).collect())?;
    let hrep = vrep.polar_unchecked();
    Ok(FreeBallModel {
        metric: m.clone(),
        graph,
        vrep,
        hrep,
        vertex_labels,
        lip_vertices: OnceLock::new(),
    })
}

/// Convex hull of every molecule, including the non-extreme ones.
pub fn full_molecule_hull(m: &MetricSpace) -> Result<VPolytope, PolytopeError> {
    let pts: Vec<Vec<Rational>> = molecules(m).into_iter().map(|x| x.coords).collect();
    polytope::reduce_to_vertices(&pts)
}

/// `m_{i,j}` is a vertex of `B_F(M)` iff no third point splits `d(i, j)`.
pub fn is_extreme(m: &MetricSpace, i: usize, j: usize) -> bool {
    !m.is_degenerate_pair(i, j)
}

/// Dimension of the face with `m_{i,j}` in its relative interior: `|[i,j]| − 2`.
pub fn face_dimension(m: &MetricSpace, i: usize, j: usize) -> usize {
    metric_segment(m, i, j).len() - 2
}

/// Pairs `(u, v)`, `u ≠ v`, with `d(i,j) = d(i,u) + d(u,v) + d(v,j)`.
pub fn face_of_molecule_vertices(m: &MetricSpace, i: usize, j: usize) -> Vec<(usize, usize)> {
    let n = m.len();
    let target = m.d(i, j);
    (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .filter(|&(u, v)| *target == m.d(i, u) + m.d(u, v) + m.d(v, j))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryOperator {
    /// `|V| × |E|`; column `e = (u, v)`, `u < v`, is `(χ_v − χ_u) / d(u, v)`.
    pub matrix: Vec<Vec<Rational>>,
    /// Kernel basis: fundamental cycles `t_e = ±d(e)` of the spanning tree.
    pub cycle_basis: Vec<Vec<Rational>>,
    /// Edge indices of the lexicographically smallest spanning tree.
    pub spanning_tree: Vec<usize>,
    root: usize,
}

impl BoundaryOperator {
    /// The operator with the root row removed: a map `ℝ^E → ℝⁿ` of rank `n`.
    pub fn reduced(&self) -> Vec<Vec<Rational>> {
        self.matrix
            .iter()
            .enumerate()
            .filter(|&(v, _)| v != self.root)
            .map(|(_, r)| r.clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix)
    }

    /// First Betti number `|E| − n`.
    pub fn cycle_rank(&self) -> usize {
        self.cycle_basis.len()
    }
}

pub(crate) struct UnionFind(Vec<usize>);

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self((0..n).collect())
    }
    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Greedy spanning tree over edges in `(u, v)` order.
pub fn lex_spanning_tree(g: &WeightedGraph) -> Vec<usize> {
    let mut uf = UnionFind::new(g.vertex_count());
    g.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| uf.union(e.u, e.v))
        .map(|(k, _)| k)
        .collect()
}

/// Signed unit circulation (`±1` per edge, relative to `u → v`) of the
/// fundamental cycle closing `chord` through `tree`.
pub fn fundamental_cycle(g: &WeightedGraph, tree: &[usize], chord: usize) -> Vec<i8> {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &k in tree {
        let e = &g.edges()[k];
        adj[e.u].push((e.v, k));
        adj[e.v].push((e.u, k));
    }
    let c = &g.edges()[chord];
    // tree path from c.v back to c.u
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut stack = vec![c.v];
    seen[c.v] = true;
    while let Some(x) = stack.pop() {
        for &(y, k) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some((x, k));
                stack.push(y);
            }
        }
    }
    let mut signs = vec![0i8; g.edges().len()];
    signs[chord] = 1;
    // walk c.u → … → c.v along parents, i.e. traversal direction is reversed
    let mut cur = c.u;
    while cur != c.v {
        let (prev, k) = parent[cur].expect("tree spans the graph");
        // the closed walk goes c.u → c.v (chord) then c.v → … → c.u,
        // so this tree edge is traversed prev → cur
        let e = &g.edges()[k];
        signs[k] = if e.u == prev && e.v == cur { 1 } else { -1 };
        cur = prev;
    }
    signs
}

pub fn boundary_operator(m: &MetricSpace) -> BoundaryOperator {
    let g = canonical_graph(m);
    boundary_operator_of(m, &g)
}

pub(crate) fn boundary_operator_of(m: &MetricSpace, g: &WeightedGraph) -> BoundaryOperator {
    let nv = g.vertex_count();
    let ne = g.edges().len();
    let mut matrix = vec![vec![Rational::zero(); ne]; nv];
    for (k, e) in g.edges().iter().enumerate() {
        let inv = Rational::one() / &e.w;
        matrix[e.v][k] = inv.clone();
        matrix[e.u][k] = -inv;
    }
    let tree = lex_spanning_tree(g);
    let cycle_basis = (0..ne)
        .filter(|k| !tree.contains(k))
        .map(|chord| {
            fundamental_cycle(g, &tree, chord)
                .into_iter()
                .zip(g.edges())
                .map(|(s, e)| &e.w * Rational::from_integer(i64::from(s).into()))
                .collect()
        })
        .collect();
    BoundaryOperator {
        matrix,
        cycle_basis,
        spanning_tree: tree,
        root: m.root(),
    }
}

/// `min Σ|t_e|` over `∂t = φ`, solved exactly.
pub fn free_norm(m: &MetricSpace, phi: &[Rational]) -> Rational {
    let op = boundary_operator(m);
    free_norm_with(&op, phi)
}

pub fn free_norm_with(op: &BoundaryOperator, phi: &[Rational]) -> Rational {
    let reduced = op.reduced();
    let ne = op.matrix.first().map_or(0, Vec::len);
    let a: Vec<Vec<Rational>> = reduced
        .iter()
        .map(|row| row.iter().cloned().chain(row.iter().map(|x| -x)).collect())
        .collect();
    let c = vec![Rational::one(); 2 * ne];
    match lp::minimize(&c, &a, phi) {
        LpOutcome::Optimal { value, .. } => value,
        other => unreachable!("∂ has full row rank and the cost is bounded below: {other:?}"),
    }
}

/// The Kantorovich–Rubinstein polytope `conv{(e_i − e_j)/d(i,j)}` in `ℝ^{n+1}`,
/// projected along the root coordinate.
pub fn fundamental_polytope(m: &MetricSpace) -> Result<VPolytope, PolytopeError> {
    let n = m.len();
    let mut pts = Vec::with_capacity(n * (n - 1));
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut v = vec![Rational::zero(); n];
            let inv = Rational::one() / m.d(i, j);
            v[i] = inv.clone();
            v[j] = -inv;
            pts.push(v);
        }
    }
    let hull = polytope::reduce_to_vertices(&pts)?;
    let root = m.root();
    let projected: Vec<Vec<Rational>> = hull
        .vertices()
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|&(k, _)| k != root)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect();
    polytope::reduce_to_vertices(&projected)
}

/// For integer distances, whether every Lipschitz-ball vertex is a lattice
/// point; `None` when some distance is not an integer.
pub fn lip_vertices_integral(model: &FreeBallModel) -> Option<bool> {
    if !model.metric.distances().iter().flatten().all(|d| d.is_integer()) {
        return None;
    }
    Some(
        model
            .lip_vertices()
            .vertices()
            .iter()
            .flatten()
            .all(Rational::is_integer),
    )
}

/// Norm-duality check value: `max ⟨f, φ⟩` over Lipschitz-ball vertices.
pub fn dual_norm_by_vertices(model: &FreeBallModel, phi: &[Rational]) -> Rational {
    model
        .lip_vertices()
        .vertices()
        .iter()
        .map(|f| dot(f, phi))
        .max()
        .unwrap_or_else(Rational::zero)
        .abs()
}
