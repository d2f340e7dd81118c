//! Seeded generators of random metric spaces for tests and batch inputs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::metric::{diamond, from_weighted_graph, rebase, Edge, MetricSpace, WeightedGraph};
use crate::rational::Rational;

fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(1i64..=9).into(), rng.gen_range(1i64..=4).into())
}

/// Integer distances uniform in `[5, 10]`; always a metric with strict triangles
/// except for ties like `5 + 5 = 10`.
pub fn random_dense_metric<R: Rng>(rng: &mut R, points: usize) -> MetricSpace {
    let mut d = vec![vec![Rational::from_integer(0.into()); points]; points];
    for i in 0..points {
        for j in (i + 1)..points {
            let x = Rational::from_integer(rng.gen_range(5i64..=10).into());
            d[i][j] = x.clone();
            d[j][i] = x;
        }
    }
    MetricSpace::from_distances(d).expect("distances in [5, 10] satisfy the triangle inequality")
}

fn graph(points: usize, edges: Vec<(usize, usize, Rational)>) -> WeightedGraph {
    WeightedGraph::new(points, edges.into_iter().map(|(u, v, w)| Edge { u, v, w }).collect())
        .expect("generated graphs are simple with positive weights")
}

/// Shortest-path metric of a random connected graph with rational weights.
pub fn random_graph_metric<R: Rng>(rng: &mut R, points: usize) -> MetricSpace {
    let mut edges = Vec::new();
    for v in 1..points {
        edges.push((rng.gen_range(0..v), v, small_rational(rng)));
    }
    for u in 0..points {
        for v in (u + 1)..points {
            if rng.gen_bool(0.5) && !edges.iter().any(|&(a, b, _)| (a.min(b), a.max(b)) == (u, v)) {
                edges.push((u, v, small_rational(rng)));
            }
        }
    }
    let m = from_weighted_graph(&graph(points, edges)).expect("connected");
    let root = rng.gen_range(0..points);
    rebase(&m, root).expect("root in range")
}

/// Either a dense integer metric or a graph metric, evenly.
pub fn random_metric<R: Rng>(rng: &mut R, points: usize) -> MetricSpace {
    if rng.gen_bool(0.5) {
        random_dense_metric(rng, points)
    } else {
        random_graph_metric(rng, points)
    }
}

/// Random tree on `points` vertices with rational weights and a random root.
pub fn random_tree<R: Rng>(rng: &mut R, points: usize) -> MetricSpace {
    let mut labels: Vec<usize> = (0..points).collect();
    labels.shuffle(rng);
    let edges = (1..points)
        .map(|v| {
            let p = rng.gen_range(0..v);
            let (a, b) = (labels[p], labels[v]);
            (a.min(b), a.max(b), small_rational(rng))
        })
        .collect();
    let m = from_weighted_graph(&graph(points, edges)).expect("trees are connected");
    let root = rng.gen_range(0..points);
    rebase(&m, root).expect("root in range")
}

/// `K_{2,k}` with all weights `w`: hubs `0` and `1`, spokes `2..k+2`.
pub fn spiderweb(spokes: usize, w: &Rational) -> MetricSpace {
    let mut edges = Vec::new();
    for z in 2..(2 + spokes) {
        edges.push((0, z, w.clone()));
        edges.push((1, z, w.clone()));
    }
    from_weighted_graph(&graph(spokes + 2, edges)).expect("connected")
}

pub fn segment(w: &Rational) -> MetricSpace {
    from_weighted_graph(&graph(2, vec![(0, 1, w.clone())])).expect("connected")
}

/// A random segment or `K_{2,k}` spiderweb with `n ≤ max_n`, randomly rooted.
pub fn random_spiderweb<R: Rng>(rng: &mut R, max_n: usize) -> MetricSpace {
    let w = small_rational(rng);
    let m = if max_n < 3 || rng.gen_bool(0.4) {
        segment(&w)
    } else {
        spiderweb(rng.gen_range(2..=max_n - 1), &w)
    };
    let root = rng.gen_range(0..m.len());
    rebase(&m, root).expect("root in range")
}

/// Glues `b` onto a random point of `a`.
pub fn glue_at_random<R: Rng>(rng: &mut R, a: &MetricSpace, b: &MetricSpace) -> MetricSpace {
    let at = rng.gen_range(0..a.len());
    let glued = diamond(&rebase(a, at).expect("in range"), b);
    let root = rng.gen_range(0..glued.len());
    rebase(&glued, root).expect("in range")
}

/// A diamond sum of at least two spiderwebs with total dimension `≤ max_n`.
pub fn random_hanner<R: Rng>(rng: &mut R, max_n: usize) -> MetricSpace {
    let mut acc = random_spiderweb(rng, max_n.saturating_sub(1).max(1));
    loop {
        let room = max_n - acc.dim();
        if room == 0 {
            return acc;
        }
        let part = random_spiderweb(rng, room);
        acc = glue_at_random(rng, &acc, &part);
        if rng.gen_bool(0.3) {
            return acc;
        }
    }
}
