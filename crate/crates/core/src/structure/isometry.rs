//! Isometry of free spaces through cyclic edge bijections.
//!
//! Two free spaces are isometric iff the canonical graphs have the same
//! number of vertices and a cyclic bijection between their edges whose
//! weight ratio is constant on each block. The search matches blocks by
//! their counts, then enumerates edge bijections within each matched pair,
//! rejecting a partial map as soon as some cycle fails to land on a cycle.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::free_space::{free_ball, lex_spanning_tree, molecule};
use crate::linalg;
use crate::metric::{canonical_graph, MetricSpace, WeightedGraph};
use crate::rational::Rational;

use super::{blocks, Block, StructureError};

pub const DEFAULT_BUDGET: usize = 12;
const MASK_BITS: usize = 128;

#[derive(Debug, Clone, PartialEq)]
pub struct IsometryWitness {
    /// `sigma[e]` is the edge of `G'` matched with edge `e` of `G`.
    pub sigma: Vec<usize>,
    /// `T(m_e) = signs[e] · m'_{sigma[e]}`.
    pub signs: Vec<i8>,
    /// Edge sets of the blocks of `G`.
    pub components: Vec<Vec<usize>>,
    /// `d'(σ(e)) / d(e)` on each block.
    pub ratios: Vec<Rational>,
    /// The linear map `T`, `n × n`.
    pub matrix: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NotIsometric {
    VertexCount { left: usize, right: usize },
    EdgeCount { left: usize, right: usize },
    ComponentStructure,
    NoCyclicBijection,
}

impl fmt::Display for NotIsometric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotIsometric::VertexCount { left, right } => {
                write!(f, "point counts differ ({left} vs {right})")
            }
            NotIsometric::EdgeCount { left, right } => write!(
                f,
                "ball vertex counts differ ({} vs {})",
                2 * left,
                2 * right
            ),
            NotIsometric::ComponentStructure => {
                write!(f, "biconnected components do not match by size")
            }
            NotIsometric::NoCyclicBijection => {
                write!(f, "no cyclic bijection with blockwise constant ratio")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum IsometryOutcome {
    Isometric(IsometryWitness),
    NotIsometric(NotIsometric),
}

impl IsometryOutcome {
    pub fn witness(&self) -> Option<&IsometryWitness> {
        match self {
            IsometryOutcome::Isometric(w) => Some(w),
            IsometryOutcome::NotIsometric(_) => None,
        }
    }
}

/// A block with local edge numbering.
struct LocalBlock<'a> {
    g: &'a WeightedGraph,
    edges: Vec<usize>,
    /// Simple cycles as masks over local edge indices.
    cycles: Vec<u128>,
}

impl<'a> LocalBlock<'a> {
    fn new(g: &'a WeightedGraph, b: &Block) -> Self {
        let mut lb = LocalBlock {
            g,
            edges: b.edges.clone(),
            cycles: Vec::new(),
        };
        lb.cycles = lb.simple_cycles(&b.vertices);
        lb
    }

    fn ends(&self, local: usize) -> (usize, usize) {
        let e = &self.g.edges()[self.edges[local]];
        (e.u, e.v)
    }

    fn weight(&self, local: usize) -> &Rational {
        &self.g.edges()[self.edges[local]].w
    }

    fn simple_cycles(&self, vertices: &[usize]) -> Vec<u128> {
        let mut adj: BTreeMap<usize, Vec<(usize, usize)>> = vertices.iter().map(|&v| (v, Vec::new())).collect();
        for l in 0..self.edges.len() {
            let (u, v) = self.ends(l);
            adj.get_mut(&u).expect("endpoint in block").push((v, l));
            adj.get_mut(&v).expect("endpoint in block").push((u, l));
        }
        let mut found: HashSet<u128> = HashSet::new();
        for &s in vertices {
            let mut on_path = HashSet::from([s]);
            walk(s, s, 0, 0, &adj, &mut on_path, &mut found);
        }
        let mut out: Vec<u128> = found.into_iter().collect();
        out.sort_unstable_by_key(|m| (m.count_ones(), *m));
        out
    }

    /// `±1` per edge of a cycle, for one traversal direction.
    fn traversal_signs(&self, mask: u128) -> Vec<(usize, i8)> {
        let first = mask.trailing_zeros() as usize;
        let (start, mut cur) = self.ends(first);
        let mut out = vec![(first, 1i8)];
        let mut used = 1u128 << first;
        while cur != start {
            let next = (0..self.edges.len())
                .find(|&l| mask & (1 << l) != 0 && used & (1 << l) == 0 && {
                    let (u, v) = self.ends(l);
                    u == cur || v == cur
                })
                .expect("mask is a cycle");
            let (u, v) = self.ends(next);
            out.push((next, if u == cur { 1 } else { -1 }));
            cur = if u == cur { v } else { u };
            used |= 1 << next;
        }
        out
    }
}

fn walk(
    s: usize,
    x: usize,
    mask: u128,
    len: usize,
    adj: &BTreeMap<usize, Vec<(usize, usize)>>,
    on_path: &mut HashSet<usize>,
    found: &mut HashSet<u128>,
) {
    for &(y, l) in &adj[&x] {
        if mask & (1 << l) != 0 {
            continue;
        }
        if y == s && len >= 2 {
            found.insert(mask | (1 << l));
        } else if y > s && !on_path.contains(&y) {
            on_path.insert(y);
            walk(s, y, mask | (1 << l), len + 1, adj, on_path, found);
            on_path.remove(&y);
        }
    }
}

struct BlockMatch {
    /// Local edge of the right block for each local edge of the left block.
    sigma: Vec<usize>,
    signs: Vec<i8>,
    ratio: Rational,
}

fn profile(b: &LocalBlock<'_>, l: usize) -> Vec<u32> {
    let mut p: Vec<u32> = b
        .cycles
        .iter()
        .filter(|&&c| c & (1 << l) != 0)
        .map(|c| c.count_ones())
        .collect();
    p.sort_unstable();
    p
}

/// Assignment order that closes cycles early.
fn search_order(b: &LocalBlock<'_>) -> Vec<usize> {
    let m = b.edges.len();
    let mut order = Vec::with_capacity(m);
    let mut assigned = 0u128;
    let mut touched: HashSet<usize> = HashSet::new();
    while order.len() < m {
        let best = (0..m)
            .filter(|&l| assigned & (1 << l) == 0)
            .max_by_key(|&l| {
                let with = assigned | (1 << l);
                let closed = b.cycles.iter().filter(|&&c| c & with == c && c & (1 << l) != 0).count();
                let (u, v) = b.ends(l);
                let contact = usize::from(touched.contains(&u)) + usize::from(touched.contains(&v));
                (closed, contact, std::cmp::Reverse(l))
            })
            .expect("edges remain");
        order.push(best);
        assigned |= 1 << best;
        let (u, v) = b.ends(best);
        touched.insert(u);
        touched.insert(v);
    }
    order
}

fn solve_signs(left: &LocalBlock<'_>, right: &LocalBlock<'_>, sigma: &[usize]) -> Option<Vec<i8>> {
    let m = left.edges.len();
    let c = left.cycles.len();
    // parity union-find over edges and cycles: parity[x] relative to its root
    let mut parent: Vec<usize> = (0..m + c).collect();
    let mut parity = vec![0u8; m + c];
    fn find(parent: &mut [usize], parity: &mut [u8], x: usize) -> (usize, u8) {
        if parent[x] == x {
            return (x, 0);
        }
        let (r, p) = find(parent, parity, parent[x]);
        parity[x] ^= p;
        parent[x] = r;
        (r, parity[x])
    }
    for (ci, &cyc) in left.cycles.iter().enumerate() {
        let image = (0..m)
            .filter(|&l| cyc & (1 << l) != 0)
            .fold(0u128, |acc, l| acc | (1 << sigma[l]));
        let right_signs: BTreeMap<usize, i8> = right.traversal_signs(image).into_iter().collect();
        for (l, s) in left.traversal_signs(cyc) {
            let b = u8::from(s * right_signs[&sigma[l]] < 0);
            let (ra, pa) = find(&mut parent, &mut parity, l);
            let (rb, pb) = find(&mut parent, &mut parity, m + ci);
            if ra == rb {
                if pa ^ pb != b {
                    return None;
                }
            } else {
                parent[ra] = rb;
                parity[ra] = pa ^ pb ^ b;
            }
        }
    }
    Some(
        (0..m)
            .map(|l| if find(&mut parent, &mut parity, l).1 == 0 { 1 } else { -1 })
            .collect(),
    )
}

fn match_blocks(left: &LocalBlock<'_>, right: &LocalBlock<'_>) -> Option<BlockMatch> {
    let m = left.edges.len();
    if m == 1 {
        return Some(BlockMatch {
            sigma: vec![0],
            signs: vec![1],
            ratio: right.weight(0) / left.weight(0),
        });
    }
    let mut lens_l: Vec<u32> = left.cycles.iter().map(|c| c.count_ones()).collect();
    let mut lens_r: Vec<u32> = right.cycles.iter().map(|c| c.count_ones()).collect();
    lens_l.sort_unstable();
    lens_r.sort_unstable();
    if lens_l != lens_r {
        return None;
    }
    let pl: Vec<Vec<u32>> = (0..m).map(|l| profile(left, l)).collect();
    let pr: Vec<Vec<u32>> = (0..m).map(|l| profile(right, l)).collect();
    let order = search_order(left);
    let pos: Vec<usize> = {
        let mut p = vec![0; m];
        for (k, &l) in order.iter().enumerate() {
            p[l] = k;
        }
        p
    };
    // cycles to test once the k-th edge in order is assigned
    let mut closing: Vec<Vec<u128>> = vec![Vec::new(); m];
    for &c in &left.cycles {
        let last = (0..m).filter(|&l| c & (1 << l) != 0).map(|l| pos[l]).max().expect("nonempty");
        closing[last].push(c);
    }
    let targets: HashSet<u128> = right.cycles.iter().copied().collect();

    struct State<'s> {
        sigma: Vec<usize>,
        used: u128,
        ratio: Option<Rational>,
        left: &'s LocalBlock<'s>,
        right: &'s LocalBlock<'s>,
    }

    fn image(sigma: &[usize], mask: u128, m: usize) -> u128 {
        (0..m)
            .filter(|&l| mask & (1 << l) != 0)
            .fold(0u128, |acc, l| acc | (1 << sigma[l]))
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        k: usize,
        st: &mut State<'_>,
        order: &[usize],
        pl: &[Vec<u32>],
        pr: &[Vec<u32>],
        closing: &[Vec<u128>],
        targets: &HashSet<u128>,
    ) -> Option<BlockMatch> {
        let m = order.len();
        if k == m {
            let signs = solve_signs(st.left, st.right, &st.sigma)?;
            return Some(BlockMatch {
                sigma: st.sigma.clone(),
                signs,
                ratio: st.ratio.clone().expect("assigned"),
            });
        }
        let l = order[k];
        // identity first, so a space compared with itself gets σ = id
        for r in std::iter::once(l).chain((0..m).filter(|&r| r != l)) {
            if st.used & (1 << r) != 0 || pl[l] != pr[r] {
                continue;
            }
            let q = st.right.weight(r) / st.left.weight(l);
            if st.ratio.as_ref().is_some_and(|x| *x != q) {
                continue;
            }
            let fresh = st.ratio.is_none();
            if fresh {
                st.ratio = Some(q);
            }
            st.sigma[l] = r;
            st.used |= 1 << r;
            if closing[k].iter().all(|&c| targets.contains(&image(&st.sigma, c, m))) {
                if let Some(found) = dfs(k + 1, st, order, pl, pr, closing, targets) {
                    return Some(found);
                }
            }
            st.used &= !(1 << r);
            if fresh {
                st.ratio = None;
            }
        }
        None
    }

    let mut st = State {
        sigma: vec![usize::MAX; m],
        used: 0,
        ratio: None,
        left,
        right,
    };
    dfs(0, &mut st, &order, &pl, &pr, &closing, &targets)
}

fn signature(b: &Block) -> (usize, usize, usize) {
    (b.vertices.len(), b.edges.len(), b.cycle_rank())
}

/// Kuhn's augmenting paths; block `i` tries `i` first, then index order.
fn perfect_matching(compat: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = compat.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    fn augment(i: usize, compat: &[Vec<bool>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for j in std::iter::once(i).chain((0..compat.len()).filter(|&j| j != i)) {
            if compat[i][j] && !seen[j] {
                seen[j] = true;
                if owner[j].is_none_or(|o| augment(o, compat, seen, owner)) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    for i in 0..n {
        let mut seen = vec![false; n];
        if !augment(i, compat, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut assign = vec![0; n];
    for (j, o) in owner.iter().enumerate() {
        assign[o.expect("perfect")] = j;
    }
    Some(assign)
}

fn molecule_columns(m: &MetricSpace, g: &WeightedGraph, edges: &[usize]) -> Vec<Vec<Rational>> {
    edges
        .iter()
        .map(|&k| {
            let e = &g.edges()[k];
            molecule(m, e.v, e.u)
        })
        .collect()
}

/// Decides whether `F(a)` and `F(b)` are isometric, with a witness map.
pub fn isometry_check(
    a: &MetricSpace,
    b: &MetricSpace,
    budget: usize,
) -> Result<IsometryOutcome, StructureError> {
    use IsometryOutcome::NotIsometric as No;
    if a.len() != b.len() {
        return Ok(No(NotIsometric::VertexCount {
            left: a.len(),
            right: b.len(),
        }));
    }
    let g = canonical_graph(a);
    let h = canonical_graph(b);
    if g.edges().len() != h.edges().len() {
        return Ok(No(NotIsometric::EdgeCount {
            left: g.edges().len(),
            right: h.edges().len(),
        }));
    }
    let bg = blocks(&g);
    let bh = blocks(&h);
    let mut sg: Vec<_> = bg.iter().map(signature).collect();
    let mut sh: Vec<_> = bh.iter().map(signature).collect();
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return Ok(No(NotIsometric::ComponentStructure));
    }
    let limit = budget.min(MASK_BITS);
    if let Some(big) = bg.iter().find(|blk| blk.edges.len() > 1 && blk.edges.len() > limit) {
        return Err(StructureError::SearchBudgetExceeded {
            edges: big.edges.len(),
            budget: limit,
        });
    }

    let lg: Vec<LocalBlock<'_>> = bg.iter().map(|blk| LocalBlock::new(&g, blk)).collect();
    let lh: Vec<LocalBlock<'_>> = bh.iter().map(|blk| LocalBlock::new(&h, blk)).collect();
    let mut found: Vec<Vec<Option<BlockMatch>>> = Vec::with_capacity(bg.len());
    for (i, l) in lg.iter().enumerate() {
        let row = lh
            .iter()
            .enumerate()
            .map(|(j, r)| {
                if signature(&bg[i]) == signature(&bh[j]) {
                    match_blocks(l, r)
                } else {
                    None
                }
            })
            .collect();
        found.push(row);
    }
    let compat: Vec<Vec<bool>> = found.iter().map(|r| r.iter().map(Option::is_some).collect()).collect();
    let Some(assign) = perfect_matching(&compat) else {
        return Ok(No(NotIsometric::NoCyclicBijection));
    };

    let ne = g.edges().len();
    let mut sigma = vec![usize::MAX; ne];
    let mut signs = vec![0i8; ne];
    let mut ratios = Vec::with_capacity(bg.len());
    for (i, &j) in assign.iter().enumerate() {
        let bm = found[i][j].as_ref().expect("matched pair is compatible");
        for (l, &r) in bm.sigma.iter().enumerate() {
            sigma[lg[i].edges[l]] = lh[j].edges[r];
            signs[lg[i].edges[l]] = bm.signs[l];
        }
        ratios.push(bm.ratio.clone());
    }

    let matrix = if a.dim() == 0 {
        Vec::new()
    } else {
        let tree = lex_spanning_tree(&g);
        let src = molecule_columns(a, &g, &tree);
        let dst: Vec<Vec<Rational>> = tree
            .iter()
            .map(|&k| {
                let e = &h.edges()[sigma[k]];
                let s = Rational::from_integer(i64::from(signs[k]).into());
                molecule(b, e.v, e.u).into_iter().map(|x| x * &s).collect()
            })
            .collect();
        // columns → matrices: B has the tree molecules as columns
        let bt = linalg::transpose(&src);
        let bpt = linalg::transpose(&dst);
        let inv = linalg::inverse(&bt).expect("spanning-tree molecules form a basis");
        linalg::mat_mul(&bpt, &inv)
    };
    Ok(IsometryOutcome::Isometric(IsometryWitness {
        sigma,
        signs,
        components: bg.iter().map(|blk| blk.edges.clone()).collect(),
        ratios,
        matrix,
    }))
}

/// Checks `T(m_e) = ε_e m'_{σ(e)}` for every edge, the blockwise ratios, and
/// that `T` maps the vertices of `B_F(a)` onto those of `B_F(b)`.
pub fn verify_witness(a: &MetricSpace, b: &MetricSpace, w: &IsometryWitness) -> bool {
    let g = canonical_graph(a);
    let h = canonical_graph(b);
    if a.dim() == 0 {
        return b.dim() == 0;
    }
    let mut seen = vec![false; h.edges().len()];
    for &s in &w.sigma {
        if s >= seen.len() || seen[s] {
            return false;
        }
        seen[s] = true;
    }
    for (comp, ratio) in w.components.iter().zip(&w.ratios) {
        if comp
            .iter()
            .any(|&k| &h.edges()[w.sigma[k]].w / &g.edges()[k].w != *ratio)
        {
            return false;
        }
    }
    for (k, e) in g.edges().iter().enumerate() {
        let image = linalg::mat_vec(&w.matrix, &molecule(a, e.v, e.u));
        let f = &h.edges()[w.sigma[k]];
        let s = Rational::from_integer(i64::from(w.signs[k]).into());
        let expected: Vec<Rational> = molecule(b, f.v, f.u).into_iter().map(|x| x * &s).collect();
        if image != expected {
            return false;
        }
    }
    let (Ok(ba), Ok(bb)) = (free_ball(a), free_ball(b)) else {
        return false;
    };
    let mut mapped: Vec<Vec<Rational>> = ba
        .vrep
        .vertices()
        .iter()
        .map(|v| linalg::mat_vec(&w.matrix, v))
        .collect();
    mapped.sort();
    let mut target = bb.vrep.vertices().to_vec();
    target.sort();
    mapped == target
}

/// At least four vertices, and connected after removing any two.
pub fn is_three_connected(g: &WeightedGraph) -> bool {
    let n = g.vertex_count();
    if n < 4 {
        return false;
    }
    let adj = g.neighbors();
    let connected_without = |x: usize, y: usize| {
        let start = (0..n).find(|&v| v != x && v != y).expect("n >= 4");
        let mut seen = vec![false; n];
        seen[x] = true;
        seen[y] = true;
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == if x == y { n - 1 } else { n - 2 }
    };
    (0..n).all(|x| (x..n).all(|y| connected_without(x, y)))
}

/// The vertex bijection inducing `σ`, when there is one.
pub fn induced_vertex_map(a: &MetricSpace, b: &MetricSpace, w: &IsometryWitness) -> Option<Vec<usize>> {
    let g = canonical_graph(a);
    let h = canonical_graph(b);
    let n = g.vertex_count();
    let mut f = vec![usize::MAX; n];
    for (x, slot) in f.iter_mut().enumerate() {
        let mut common: Option<Vec<usize>> = None;
        for (k, e) in g.edges().iter().enumerate() {
            if e.u != x && e.v != x {
                continue;
            }
            let img = &h.edges()[w.sigma[k]];
            let ends = vec![img.u, img.v];
            common = Some(match common {
                None => ends,
                Some(c) => c.into_iter().filter(|v| ends.contains(v)).collect(),
            });
        }
        match common.as_deref() {
            Some([v]) => *slot = *v,
            _ => return None,
        }
    }
    let mut sorted = f.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != n {
        return None;
    }
    g.edges()
        .iter()
        .enumerate()
        .all(|(k, e)| h.edge_index(f[e.u], f[e.v]) == Some(w.sigma[k]))
        .then_some(f)
}

impl IsometryWitness {
    pub fn is_identity(&self) -> bool {
        self.sigma.iter().enumerate().all(|(k, &s)| k == s)
            && self.matrix.iter().enumerate().all(|(i, row)| {
                row.iter()
                    .enumerate()
                    .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{dilate, rebase};
    use crate::rational::{int, ratio};
    use crate::structure::tests::{cycle, graph_metric, k};

    fn check(a: &MetricSpace, b: &MetricSpace) -> IsometryOutcome {
        isometry_check(a, b, DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn self_isometry() {
        for m in [k(3), k(4), k(5), cycle(4), cycle(5)] {
            let out = check(&m, &m);
            let w = out.witness().expect("isometric to itself");
            assert!(verify_witness(&m, &m, w));
            assert!(w.is_identity());
        }
    }

    #[test]
    fn trees_are_isometric() {
        let path = graph_metric(4, &[(0, 1, int(1)), (1, 2, int(5)), (2, 3, ratio(1, 2))]);
        let star = graph_metric(4, &[(0, 1, int(2)), (0, 2, int(3)), (0, 3, int(7))]);
        let w = check(&path, &star);
        assert!(verify_witness(&path, &star, w.witness().unwrap()));
    }

    #[test]
    fn complete_graph_vs_cycle() {
        assert_eq!(
            check(&k(4), &cycle(4)),
            IsometryOutcome::NotIsometric(NotIsometric::EdgeCount { left: 6, right: 4 })
        );
        assert!(matches!(check(&k(4), &k(3)), IsometryOutcome::NotIsometric(NotIsometric::VertexCount { .. })));
    }

    #[test]
    fn dilation_ratio() {
        let m = graph_metric(5, &[(0, 1, int(1)), (1, 2, int(2)), (2, 0, int(2)), (2, 3, int(1)), (3, 4, int(1)), (4, 2, int(1))]);
        let big = dilate(&m, &int(3)).unwrap();
        let out = check(&m, &big);
        let w = out.witness().unwrap();
        assert!(w.ratios.iter().all(|r| *r == int(3)));
        assert!(verify_witness(&m, &big, w));
    }

    #[test]
    fn rebased_space_is_isometric() {
        let m = cycle(5);
        let other = rebase(&m, 3).unwrap();
        let w = check(&m, &other);
        assert!(verify_witness(&m, &other, w.witness().unwrap()));
    }

    #[test]
    fn unequal_weights_in_one_block() {
        let a = graph_metric(4, &[(0, 1, int(1)), (1, 2, int(1)), (2, 3, int(1)), (3, 0, int(1))]);
        let b = graph_metric(4, &[(0, 1, int(1)), (1, 2, int(2)), (2, 3, int(1)), (3, 0, int(2))]);
        assert_eq!(check(&a, &b), IsometryOutcome::NotIsometric(NotIsometric::NoCyclicBijection));
    }

    #[test]
    fn blocks_rescale_independently() {
        let a = graph_metric(5, &[(0, 1, int(1)), (1, 2, int(1)), (2, 0, int(1)), (2, 3, int(1)), (3, 4, int(1)), (4, 2, int(1))]);
        let b = graph_metric(5, &[(0, 1, int(1)), (1, 2, int(1)), (2, 0, int(1)), (2, 3, int(4)), (3, 4, int(4)), (4, 2, int(4))]);
        let out = check(&a, &b);
        let w = out.witness().unwrap();
        assert!(verify_witness(&a, &b, w));
        let mut r = w.ratios.clone();
        r.sort();
        assert_eq!(r, vec![int(1), int(4)]);
    }

    #[test]
    fn three_connected_maps_come_from_vertices() {
        let g = canonical_graph(&k(5));
        assert!(is_three_connected(&g));
        assert!(!is_three_connected(&canonical_graph(&cycle(5))));
        let out = check(&k(5), &k(5));
        assert!(induced_vertex_map(&k(5), &k(5), out.witness().unwrap()).is_some());
    }

    #[test]
    fn budget() {
        let k6 = k(6);
        assert!(matches!(
            isometry_check(&k6, &k6, DEFAULT_BUDGET),
            Err(StructureError::SearchBudgetExceeded { edges: 15, budget: 12 })
        ));
        assert!(isometry_check(&k6, &k6, 15).unwrap().witness().is_some());
    }
}
