//! Structural classification: block decomposition, spiderwebs, Hanner
//! spaces, zonotopes, the four-point condition, symmetric faces and isometry
//! of free spaces.

mod faces;
mod isometry;

use serde::Serialize;
use thiserror::Error;

use crate::metric::{canonical_graph, diamond, rebase, MetricSpace, WeightedGraph};
use crate::polytope::PolytopeError;

pub use faces::{symmetric_faces, FaceTemplate, SymmetricFace, MAX_FACE_DIM};
pub use isometry::{
    induced_vertex_map, is_three_connected, isometry_check, verify_witness, IsometryOutcome,
    IsometryWitness, NotIsometric, DEFAULT_BUDGET,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("requires n >= {required}, got n = {n}")]
    DimensionTooSmall { n: usize, required: usize },
    #[error("n = {n} exceeds the supported maximum {max}")]
    DimensionTooLarge { n: usize, max: usize },
    #[error("a component with {edges} edges exceeds the search budget of {budget}")]
    SearchBudgetExceeded { edges: usize, budget: usize },
    #[error("symmetric face {0:?} matches neither template")]
    TemplateMismatch(Vec<(usize, usize)>),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// A biconnected component of a graph: sorted vertices and edge indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Block {
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }
}

/// Biconnected components by the low-link traversal; bridges are blocks.
pub fn blocks(g: &WeightedGraph) -> Vec<Block> {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (k, e) in g.edges().iter().enumerate() {
        adj[e.u].push((e.v, k));
        adj[e.v].push((e.u, k));
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<usize> = Vec::new();
    let mut out = Vec::new();

    fn visit(
        x: usize,
        parent_edge: Option<usize>,
        adj: &[Vec<(usize, usize)>],
        g: &WeightedGraph,
        disc: &mut [usize],
        low: &mut [usize],
        time: &mut usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Block>,
    ) {
        disc[x] = *time;
        low[x] = *time;
        *time += 1;
        for &(y, k) in &adj[x] {
            if Some(k) == parent_edge {
                continue;
            }
            if disc[y] == usize::MAX {
                stack.push(k);
                visit(y, Some(k), adj, g, disc, low, time, stack, out);
                low[x] = low[x].min(low[y]);
                if low[y] >= disc[x] {
                    let mut edges = Vec::new();
                    while let Some(top) = stack.pop() {
                        edges.push(top);
                        if top == k {
                            break;
                        }
                    }
                    edges.sort_unstable();
                    let mut vertices: Vec<usize> = edges
                        .iter()
                        .flat_map(|&e| [g.edges()[e].u, g.edges()[e].v])
                        .collect();
                    vertices.sort_unstable();
                    vertices.dedup();
                    out.push(Block { vertices, edges });
                }
            } else if disc[y] < disc[x] {
                stack.push(k);
                low[x] = low[x].min(disc[y]);
            }
        }
    }

    for s in 0..n {
        if disc[s] == usize::MAX {
            visit(s, None, &adj, g, &mut disc, &mut low, &mut time, &mut stack, &mut out);
        }
    }
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices).then(a.edges.cmp(&b.edges)));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gluing {
    /// Original indices of the component's points, in component order.
    pub points: Vec<usize>,
    /// Original index of the point where the component is attached.
    pub attach: usize,
    /// Index of the earlier component sharing `attach`, if any.
    pub parent: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub components: Vec<MetricSpace>,
    pub gluing: Vec<Gluing>,
    point_count: usize,
    root: usize,
    single_point: Option<MetricSpace>,
}

impl Decomposition {
    /// Glues the components back with `diamond`, in order. Returns the space
    /// and `index[p]`, the position of original point `p` in it.
    pub fn reassemble(&self) -> (MetricSpace, Vec<usize>) {
        if let Some(m) = &self.single_point {
            return (m.clone(), vec![0]);
        }
        let mut index = vec![usize::MAX; self.point_count];
        let first = &self.gluing[0];
        let mut acc = self.components[0].clone();
        for (pos, &p) in first.points.iter().enumerate() {
            index[p] = pos;
        }
        for (comp, glue) in self.components.iter().zip(&self.gluing).skip(1) {
            let based = rebase(&acc, index[glue.attach]).expect("attach point is present");
            let merged = diamond(&based, comp);
            let mut next = vec![usize::MAX; self.point_count];
            // diamond order: glued point, acc's other points, comp's other points
            let mut pos = 1;
            next[glue.attach] = 0;
            let mut acc_order: Vec<(usize, usize)> = index
                .iter()
                .enumerate()
                .filter(|&(p, &i)| i != usize::MAX && p != glue.attach)
                .map(|(p, &i)| (i, p))
                .collect();
            acc_order.sort_unstable();
            for (_, p) in acc_order {
                next[p] = pos;
                pos += 1;
            }
            for (k, &p) in glue.points.iter().enumerate() {
                if k != comp.root() {
                    next[p] = pos;
                    pos += 1;
                }
            }
            index = next;
            acc = merged;
        }
        let acc = rebase(&acc, index[self.root]).expect("root is present");
        (acc, index)
    }
}

/// Blocks of the canonical graph as metric spaces, rooted at the cut vertex
/// facing the root, in breadth-first order from the root.
pub fn decompose(m: &MetricSpace) -> Decomposition {
    let g = canonical_graph(m);
    let bs = blocks(&g);
    let mut components = Vec::new();
    let mut gluing = Vec::new();
    if bs.is_empty() {
        return Decomposition {
            components,
            gluing,
            point_count: 1,
            root: 0,
            single_point: Some(m.clone()),
        };
    }
    let mut used = vec![false; bs.len()];
    let mut queue: std::collections::VecDeque<(usize, usize, Option<usize>)> =
        std::collections::VecDeque::new();
    for (b, blk) in bs.iter().enumerate() {
        if blk.vertices.contains(&m.root()) {
            used[b] = true;
            queue.push_back((b, m.root(), None));
        }
    }
    while let Some((b, attach, parent)) = queue.pop_front() {
        let blk = &bs[b];
        let local_root = blk.vertices.iter().position(|&v| v == attach).expect("attach in block");
        let me = components.len();
        components.push(m.subspace(&blk.vertices, local_root));
        gluing.push(Gluing {
            points: blk.vertices.clone(),
            attach,
            parent,
        });
        for &v in &blk.vertices {
            if v == attach {
                continue;
            }
            for (c, other) in bs.iter().enumerate() {
                if !used[c] && other.vertices.contains(&v) {
                    used[c] = true;
                    queue.push_back((c, v, Some(me)));
                }
            }
        }
    }
    Decomposition {
        components,
        gluing,
        point_count: m.len(),
        root: m.root(),
        single_point: None,
    }
}

pub fn is_tree(m: &MetricSpace) -> bool {
    canonical_graph(m).edges().len() == m.dim()
}

fn is_spiderweb_graph(g: &WeightedGraph) -> bool {
    let n1 = g.vertex_count();
    if n1 <= 2 {
        return true;
    }
    let edges = g.edges();
    if edges.len() != 2 * (n1 - 2) || edges.iter().any(|e| e.w != edges[0].w) {
        return false;
    }
    let adj = g.neighbors();
    (0..n1).any(|x| {
        ((x + 1)..n1).any(|y| {
            g.edge_index(x, y).is_none()
                && (0..n1)
                    .filter(|&z| z != x && z != y)
                    .all(|z| adj[z].len() == 2 && adj[z].contains(&x) && adj[z].contains(&y))
        })
    })
}

/// `n = 1`, or the canonical graph is `K_{2,n−1}` with equal weights.
pub fn is_spiderweb(m: &MetricSpace) -> bool {
    is_spiderweb_graph(&canonical_graph(m))
}

/// Every block is a spiderweb.
pub fn is_hanner(m: &MetricSpace) -> bool {
    decompose(m).components.iter().all(is_spiderweb)
}

/// `n ≤ 2`, or `n = 3` with the equal-weight 4-cycle.
pub fn free_ball_is_zonotope(m: &MetricSpace) -> bool {
    m.dim() <= 2 || (m.dim() == 3 && is_spiderweb(m))
}

/// For every quadruple the two largest pairing sums coincide.
pub fn lip_ball_zonoid_4pt(m: &MetricSpace) -> bool {
    let n = m.len();
    for x in 0..n {
        for y in (x + 1)..n {
            for u in (y + 1)..n {
                for v in (u + 1)..n {
                    let mut s = [
                        m.d(x, y) + m.d(u, v),
                        m.d(x, u) + m.d(y, v),
                        m.d(x, v) + m.d(y, u),
                    ];
                    s.sort();
                    if s[1] != s[2] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Whether `F(M)` splits as a nontrivial `ℓ∞`-sum; defined for `n ≥ 3`.
pub fn linfty_decomposable(m: &MetricSpace) -> Result<bool, StructureError> {
    if m.dim() < 3 {
        return Err(StructureError::DimensionTooSmall {
            n: m.dim(),
            required: 3,
        });
    }
    Ok(is_spiderweb(m))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub is_tree: bool,
    pub is_spiderweb: bool,
    pub is_hanner: bool,
    pub free_ball_is_zonotope: bool,
    pub lip_ball_zonoid_4pt: bool,
    /// `None` when `n < 3`.
    pub linfty_decomposable: Option<bool>,
    pub component_count: usize,
}

pub fn classify(m: &MetricSpace) -> ClassificationReport {
    let dec = decompose(m);
    ClassificationReport {
        is_tree: is_tree(m),
        is_spiderweb: is_spiderweb(m),
        is_hanner: dec.components.iter().all(is_spiderweb),
        free_ball_is_zonotope: free_ball_is_zonotope(m),
        lip_ball_zonoid_4pt: lip_ball_zonoid_4pt(m),
        linfty_decomposable: linfty_decomposable(m).ok(),
        component_count: dec.components.len(),
    }
}
