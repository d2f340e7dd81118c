//! Finite rooted metric spaces and their canonical weighted graphs.
//!
//! Points are indexed `0..=n`. The root is the base point `a_0` of the pointed
//! space; the free and Lipschitz balls live in `ℝⁿ` with one coordinate per
//! non-root point, in index order.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotSquare { row: usize, len: usize },
    Asymmetric { i: usize, j: usize },
    NonzeroDiagonal { i: usize },
    NonPositive { i: usize, j: usize },
    /// `d(i, j) > d(i, k) + d(k, j)`.
    Triangle { i: usize, j: usize, k: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSquare { row, len } => write!(f, "row {row} has length {len}"),
            Violation::Asymmetric { i, j } => write!(f, "d({i},{j}) != d({j},{i})"),
            Violation::NonzeroDiagonal { i } => write!(f, "d({i},{i}) != 0"),
            Violation::NonPositive { i, j } => write!(f, "d({i},{j}) <= 0"),
            Violation::Triangle { i, j, k } => {
                write!(f, "triangle inequality fails: d({i},{j}) > d({i},{k}) + d({k},{j})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("not a metric: {}", format_violations(.0))]
    NotAMetric(Vec<Violation>),
    #[error("a metric space needs at least one point")]
    Empty,
    #[error("{labels} labels for {points} points")]
    LabelCount { labels: usize, points: usize },
    #[error("root {root} out of range for {points} points")]
    RootOutOfRange { root: usize, points: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("dilation factor must be positive")]
    NonPositiveDilation,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricSpace {
    labels: Vec<String>,
    root: usize,
    dist: Vec<Vec<Rational>>,
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Checks every metric axiom, collecting all violations with witnesses.
pub fn violations(dist: &[Vec<Rational>]) -> Vec<Violation> {
    let n = dist.len();
    let mut out = Vec::new();
    for (row, r) in dist.iter().enumerate() {
        if r.len() != n {
            out.push(Violation::NotSquare { row, len: r.len() });
        }
    }
    if !out.is_empty() {
        return out;
    }
    for i in 0..n {
        if !dist[i][i].is_zero() {
            out.push(Violation::NonzeroDiagonal { i });
        }
        for j in (i + 1)..n {
            if dist[i][j] != dist[j][i] {
                out.push(Violation::Asymmetric { i, j });
            }
            if !dist[i][j].is_positive() || !dist[j][i].is_positive() {
                out.push(Violation::NonPositive { i, j });
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                if dist[i][j] > &dist[i][k] + &dist[k][j] {
                    out.push(Violation::Triangle { i, j, k });
                }
            }
        }
    }
    out
}

impl MetricSpace {
    /// Validated construction with root 0.
    pub fn validate(labels: Vec<String>, dist: Vec<Vec<Rational>>) -> Result<Self, MetricError> {
        Self::with_root(labels, 0, dist)
    }

    pub fn with_root(
        labels: Vec<String>,
        root: usize,
        dist: Vec<Vec<Rational>>,
    ) -> Result<Self, MetricError> {
        let points = dist.len();
        if points == 0 {
            return Err(MetricError::Empty);
        }
        if labels.len() != points {
            return Err(MetricError::LabelCount {
                labels: labels.len(),
                points,
            });
        }
        if root >= points {
            return Err(MetricError::RootOutOfRange { root, points });
        }
        let v = violations(&dist);
        if !v.is_empty() {
            return Err(MetricError::NotAMetric(v));
        }
        Ok(Self { labels, root, dist })
    }

    /// Validated construction with labels `"0"`, `"1"`, ….
    pub fn from_distances(dist: Vec<Vec<Rational>>) -> Result<Self, MetricError> {
        let labels = default_labels(dist.len());
        Self::validate(labels, dist)
    }

    /// Number of points, `n + 1`.
    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    /// Dimension `n` of the free space.
    pub fn dim(&self) -> usize {
        self.dist.len() - 1
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn d(&self, i: usize, j: usize) -> &Rational {
        &self.dist[i][j]
    }

    pub fn distances(&self) -> &[Vec<Rational>] {
        &self.dist
    }

    /// Coordinate of point `i` in `ℝⁿ`, `None` for the root.
    pub fn coordinate(&self, i: usize) -> Option<usize> {
        match i.cmp(&self.root) {
            std::cmp::Ordering::Less => Some(i),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(i - 1),
        }
    }

    /// Point whose coordinate is `c`.
    pub fn point_of_coordinate(&self, c: usize) -> usize {
        if c < self.root {
            c
        } else {
            c + 1
        }
    }

    pub fn max_distance(&self) -> Rational {
        self.dist
            .iter()
            .flatten()
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `d(i, j) = d(i, k) + d(k, j)` for some `k ∉ {i, j}`.
    pub fn is_degenerate_pair(&self, i: usize, j: usize) -> bool {
        (0..self.len()).any(|k| k != i && k != j && self.dist[i][j] == &self.dist[i][k] + &self.dist[k][j])
    }

    /// Every triangle inequality among distinct points is strict.
    pub fn all_triangles_strict(&self) -> bool {
        (0..self.len()).all(|i| ((i + 1)..self.len()).all(|j| !self.is_degenerate_pair(i, j)))
    }

    /// Restriction to `points`, in the given order; `root` indexes into `points`.
    pub fn subspace(&self, points: &[usize], root: usize) -> MetricSpace {
        MetricSpace {
            labels: points.iter().map(|&p| self.labels[p].clone()).collect(),
            root,
            dist: points
                .iter()
                .map(|&a| points.iter().map(|&b| self.dist[a][b].clone()).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub w: Rational,
}

/// Weighted graph with edges stored as `(u, v)`, `u < v`; this order is the
/// edge orientation used by the boundary operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    pub fn new(vertex_count: usize, edges: Vec<Edge>) -> Result<Self, MetricError> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for e in edges {
            if e.u >= vertex_count || e.v >= vertex_count {
                return Err(MetricError::InvalidGraph(format!(
                    "edge ({}, {}) out of range for {vertex_count} vertices",
                    e.u, e.v
                )));
            }
            if e.u == e.v {
                return Err(MetricError::InvalidGraph(format!("self-loop at {}", e.u)));
            }
            if !e.w.is_positive() {
                return Err(MetricError::InvalidGraph(format!(
                    "edge ({}, {}) has nonpositive weight",
                    e.u, e.v
                )));
            }
            let (u, v) = if e.u < e.v { (e.u, e.v) } else { (e.v, e.u) };
            if !seen.insert((u, v)) {
                return Err(MetricError::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
            out.push(Edge { u, v, w: e.w });
        }
        out.sort_by_key(|e| (e.u, e.v));
        Ok(Self {
            vertex_count,
            edges: out,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search_by_key(&key, |e| (e.u, e.v)).ok()
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let adj = self.neighbors();
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// All-pairs shortest paths (Floyd–Warshall); `None` entries are unreachable.
    pub fn shortest_paths(&self) -> Vec<Vec<Option<Rational>>> {
        let n = self.vertex_count;
        let mut d: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = Some(Rational::zero());
        }
        for e in &self.edges {
            d[e.u][e.v] = Some(e.w.clone());
            d[e.v][e.u] = Some(e.w.clone());
        }
        for k in 0..n {
            for i in 0..n {
                let Some(dik) = d[i][k].clone() else { continue };
                for j in 0..n {
                    let Some(dkj) = &d[k][j] else { continue };
                    let via = &dik + dkj;
                    if d[i][j].as_ref().is_none_or(|cur| via < *cur) {
                        d[i][j] = Some(via);
                    }
                }
            }
        }
        d
    }

    /// Every edge is strictly shorter than any other path between its ends.
    pub fn satisfies_canonical_condition(&self) -> bool {
        let d = self.shortest_paths();
        self.edges.iter().all(|e| {
            (0..self.vertex_count).all(|k| {
                if k == e.u || k == e.v {
                    return true;
                }
                match (&d[e.u][k], &d[k][e.v]) {
                    (Some(a), Some(b)) => a + b > e.w,
                    _ => true,
                }
            })
        })
    }
}

/// Complete graph minus every pair whose distance splits through a third point.
pub fn canonical_graph(m: &MetricSpace) -> WeightedGraph {
    let n = m.len();
    let edges = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !m.is_degenerate_pair(i, j))
        .map(|(u, v)| Edge {
            u,
            v,
            w: m.d(u, v).clone(),
        })
        .collect();
    WeightedGraph {
        vertex_count: n,
        edges,
    }
}

/// Shortest-path metric of a connected positively weighted graph, rooted at 0.
pub fn from_weighted_graph(g: &WeightedGraph) -> Result<MetricSpace, MetricError> {
    if g.vertex_count == 0 {
        return Err(MetricError::Empty);
    }
    let d = g.shortest_paths();
    let mut dist = Vec::with_capacity(g.vertex_count);
    for row in d {
        let mut r = Vec::with_capacity(row.len());
        for x in row {
            r.push(x.ok_or(MetricError::Disconnected)?);
        }
        dist.push(r);
    }
    Ok(MetricSpace {
        labels: default_labels(g.vertex_count),
        root: 0,
        dist,
    })
}

/// Points `k` with `d(i, j) = d(i, k) + d(k, j)`, including `i` and `j`.
pub fn metric_segment(m: &MetricSpace, i: usize, j: usize) -> Vec<usize> {
    (0..m.len())
        .filter(|&k| *m.d(i, j) == m.d(i, k) + m.d(k, j))
        .collect()
}

/// Points `z` with `2 d(x, z) = 2 d(z, y) = d(x, y)`.
pub fn mid_set(m: &MetricSpace, x: usize, y: usize) -> Vec<usize> {
    let two = Rational::from_integer(2.into());
    (0..m.len())
        .filter(|&z| z != x && z != y)
        .filter(|&z| &two * m.d(x, z) == *m.d(x, y) && &two * m.d(z, y) == *m.d(x, y))
        .collect()
}

pub fn dilate(m: &MetricSpace, a: &Rational) -> Result<MetricSpace, MetricError> {
    if !a.is_positive() {
        return Err(MetricError::NonPositiveDilation);
    }
    if a.is_one() {
        return Ok(m.clone());
    }
    Ok(MetricSpace {
        labels: m.labels.clone(),
        root: m.root,
        dist: m
            .dist
            .iter()
            .map(|r| r.iter().map(|x| x * a).collect())
            .collect(),
    })
}

pub fn rebase(m: &MetricSpace, r: usize) -> Result<MetricSpace, MetricError> {
    if r >= m.len() {
        return Err(MetricError::RootOutOfRange {
            root: r,
            points: m.len(),
        });
    }
    let mut out = m.clone();
    out.root = r;
    Ok(out)
}

/// Glues `m1` and `m2` at their roots. The glued point is index 0 and the
/// root; then come the non-root points of `m1`, then those of `m2`.
pub fn diamond(m1: &MetricSpace, m2: &MetricSpace) -> MetricSpace {
    let others1: Vec<usize> = (0..m1.len()).filter(|&i| i != m1.root).collect();
    let others2: Vec<usize> = (0..m2.len()).filter(|&i| i != m2.root).collect();
    // (side, index) for each point of the result
    let mut points: Vec<(u8, usize)> = vec![(0, m1.root)];
    points.extend(others1.iter().map(|&i| (1, i)));
    points.extend(others2.iter().map(|&i| (2, i)));

    let to_root = |side: u8, i: usize| -> Rational {
        match side {
            0 => Rational::zero(),
            1 => m1.d(i, m1.root).clone(),
            _ => m2.d(i, m2.root).clone(),
        }
    };
    let dist: Vec<Vec<Rational>> = points
        .iter()
        .map(|&(sa, a)| {
            points
                .iter()
                .map(|&(sb, b)| match (sa, sb) {
                    (1, 1) => m1.d(a, b).clone(),
                    (2, 2) => m2.d(a, b).clone(),
                    (0, 0) => Rational::zero(),
                    _ => to_root(sa, a) + to_root(sb, b),
                })
                .collect()
        })
        .collect();

    let mut labels: Vec<String> = vec![m1.labels[m1.root].clone()];
    labels.extend(others1.iter().map(|&i| m1.labels[i].clone()));
    labels.extend(others2.iter().map(|&i| m2.labels[i].clone()));
    let unique: BTreeSet<&String> = labels.iter().collect();
    if unique.len() != labels.len() {
        let glued = format!("{}~{}", m1.labels[m1.root], m2.labels[m2.root]);
        labels = std::iter::once(glued)
            .chain(others1.iter().map(|&i| format!("a.{}", m1.labels[i])))
            .chain(others2.iter().map(|&i| format!("b.{}", m2.labels[i])))
            .collect();
    }
    MetricSpace {
        labels,
        root: 0,
        dist,
    }
}
