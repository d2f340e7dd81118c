use std::collections::BTreeSet;

use lipfree::free_space::{free_norm, lex_spanning_tree, molecule};
use lipfree::io::{metric_to_value, parse_metric};
use lipfree::linalg::{inverse, mat_vec, rank};
use lipfree::metric::{canonical_graph, diamond, dilate, from_weighted_graph, metric_segment, rebase, Edge};
use lipfree::polytope::{
    facet_cone_volumes, facet_incidence, hull_to_hrep, polar, reduce_to_vertices, vertex_enumeration, volume,
    zonotope_volume,
};
use lipfree::product::diamond_product_identity;
use lipfree::rational::{int, mahler_floor, parse_rational, ratio};
use lipfree::sample::{random_graph_metric, random_hanner, random_metric, random_tree};
use lipfree::structure::{
    decompose, induced_vertex_map, is_hanner, is_three_connected, isometry_check, symmetric_faces, FaceTemplate,
    DEFAULT_BUDGET,
};
use lipfree::{free_ball, volume_product, MetricSpace, Rational, VPolytope, WeightedGraph};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn set(p: &VPolytope) -> BTreeSet<Vec<Rational>> {
    p.vertices().iter().cloned().collect()
}

fn permuted(m: &MetricSpace, perm: &[usize]) -> MetricSpace {
    let n = m.len();
    let mut d = vec![vec![int(0); n]; n];
    for i in 0..n {
        for j in 0..n {
            d[perm[i]][perm[j]] = m.d(i, j).clone();
        }
    }
    MetricSpace::from_distances(d).unwrap()
}

/// Integer points plus `±e_i`, so the hull is full-dimensional around 0.
fn point_cloud() -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (2usize..=4).prop_flat_map(|dim| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 0..7).prop_map(move |pts| {
            let mut out: Vec<Vec<Rational>> = pts.into_iter().map(|p| p.into_iter().map(int).collect()).collect();
            for i in 0..dim {
                for s in [1, -1] {
                    out.push((0..dim).map(|j| int(if i == j { s } else { 0 })).collect());
                }
            }
            out
        })
    })
}

fn unimodular(dim: usize, r: &mut ChaCha8Rng) -> Vec<Vec<Rational>> {
    let mut t: Vec<Vec<i64>> = (0..dim).map(|i| (0..dim).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..6 {
        let (a, b) = (r.gen_range(0..dim), r.gen_range(0..dim));
        if a == b {
            t.swap(a, (a + 1) % dim);
            continue;
        }
        let c = r.gen_range(-2..=2);
        for k in 0..dim {
            t[a][k] += c * t[b][k];
        }
    }
    t.into_iter().map(|row| row.into_iter().map(int).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hull_round_trips_through_halfspaces(pts in point_cloud()) {
        let p = reduce_to_vertices(&pts).unwrap();
        let back = vertex_enumeration(&hull_to_hrep(&p).unwrap()).unwrap();
        prop_assert_eq!(set(&back), set(&p));
    }

    #[test]
    fn polar_twice_is_identity(pts in point_cloud()) {
        let p = reduce_to_vertices(&pts).unwrap();
        let dual = vertex_enumeration(&polar(&p).unwrap()).unwrap();
        let back = vertex_enumeration(&polar(&dual).unwrap()).unwrap();
        prop_assert_eq!(set(&back), set(&p));
    }

    #[test]
    fn volume_scales_by_determinant(pts in point_cloud(), seed in any::<u64>(), s in 1i64..=3) {
        let p = reduce_to_vertices(&pts).unwrap();
        let dim = p.dim();
        let mut t = unimodular(dim, &mut rng(seed));
        for x in t[0].iter_mut() {
            *x *= int(s);
        }
        let base = volume(&p, &hull_to_hrep(&p).unwrap()).unwrap();
        prop_assert!(base > int(0));
        let image = p.map_linear(&t);
        let moved = volume(&image, &hull_to_hrep(&image).unwrap()).unwrap();
        prop_assert_eq!(moved, base * int(s));
    }

    #[test]
    fn zonotopes_match_their_triangulation(
        gens in (2usize..=3).prop_flat_map(|d| prop::collection::vec(prop::collection::vec(-2i64..=2, d), d..=d + 2))
    ) {
        let gens: Vec<Vec<Rational>> = gens.into_iter().map(|g| g.into_iter().map(int).collect()).collect();
        let dim = gens[0].len();
        let corners: Vec<Vec<Rational>> = (0..1u32 << gens.len())
            .map(|mask| {
                (0..dim)
                    .map(|c| {
                        gens.iter()
                            .enumerate()
                            .map(|(g, u)| if mask >> g & 1 == 1 { &u[c] * ratio(1, 2) } else { -&u[c] * ratio(1, 2) })
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let shephard = zonotope_volume(&gens).unwrap();
        // corners of ½ Σ [−u, u], a translate of Σ [0, u]
        let hull = reduce_to_vertices(&corners).and_then(|z| hull_to_hrep(&z).map(|h| (z, h)));
        match hull {
            Ok((z, h)) => prop_assert_eq!(volume(&z, &h).unwrap(), shephard),
            Err(_) => prop_assert_eq!(shephard, int(0)),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn antipodal_facets_carry_equal_cone_volume(seed in any::<u64>(), points in 3usize..=5) {
        let m = random_metric(&mut rng(seed), points);
        let model = free_ball(&m).unwrap();
        let h = model.facets();
        let cones = facet_cone_volumes(&model.vrep, &h);
        let hs = h.halfspaces();
        for (k, f) in hs.iter().enumerate() {
            let flipped: Vec<Rational> = f.normal.iter().map(|x| -x / &f.offset).collect();
            let j = hs
                .iter()
                .position(|g| g.normal.iter().map(|x| x / &g.offset).collect::<Vec<_>>() == flipped)
                .expect("symmetric ball has antipodal facets");
            prop_assert_eq!(&cones[k], &cones[j]);
        }
        let total: Rational = cones.into_iter().sum();
        prop_assert_eq!(total, volume(&model.vrep, &h).unwrap());
    }

    #[test]
    fn canonical_graph_inverts_graph_metric(seed in any::<u64>(), points in 2usize..=6) {
        let mut r = rng(seed);
        let mut edges = Vec::new();
        for v in 1..points {
            edges.push(Edge { u: r.gen_range(0..v), v, w: ratio(r.gen_range(1..=9), r.gen_range(1..=3)) });
        }
        for u in 0..points {
            for v in (u + 1)..points {
                if r.gen_bool(0.4) && !edges.iter().any(|e| (e.u.min(e.v), e.u.max(e.v)) == (u, v)) {
                    edges.push(Edge { u, v, w: ratio(r.gen_range(1..=9), r.gen_range(1..=3)) });
                }
            }
        }
        let g = WeightedGraph::new(points, edges).unwrap();
        prop_assume!(g.satisfies_canonical_condition());
        let m = from_weighted_graph(&g).unwrap();
        prop_assert_eq!(&canonical_graph(&m), &g);
    }

    #[test]
    fn graph_metric_inverts_canonical_graph(seed in any::<u64>(), points in 2usize..=6) {
        let m = random_metric(&mut rng(seed), points);
        let back = from_weighted_graph(&canonical_graph(&m)).unwrap();
        prop_assert_eq!(back.distances(), m.distances());
    }

    #[test]
    fn segments_trivial_iff_complete_and_strict(seed in any::<u64>(), points in 3usize..=6) {
        let m = random_metric(&mut rng(seed), points);
        let trivial = (0..points).all(|i| (0..points).all(|j| i == j || metric_segment(&m, i, j).len() == 2));
        let complete = canonical_graph(&m).edges().len() == points * (points - 1) / 2;
        prop_assert_eq!(trivial, complete && m.all_triangles_strict());
    }

    #[test]
    fn diamond_is_associative_and_glues_at_a_cut_vertex(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (pa, pb, pc) = (r.gen_range(2..=3), r.gen_range(2..=3), r.gen_range(2..=3));
        let a = random_metric(&mut r, pa);
        let b = random_metric(&mut r, pb);
        let c = random_metric(&mut r, pc);
        let left = diamond(&diamond(&a, &b), &c);
        let right = diamond(&a, &diamond(&b, &c));
        prop_assert_eq!(left.distances(), right.distances());
        let g = canonical_graph(&left);
        let n = left.len();
        let mut seen = vec![false; n];
        seen[0] = true;
        seen[1] = true;
        let mut stack = vec![1];
        while let Some(v) = stack.pop() {
            for e in g.edges() {
                for (x, y) in [(e.u, e.v), (e.v, e.u)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        prop_assert!(seen.iter().any(|s| !s), "removing the glued point must disconnect");
    }

    #[test]
    fn dilate_and_rebase_keep_edge_count(seed in any::<u64>(), points in 2usize..=6, p in 1i64..=9, q in 1i64..=9) {
        let mut r = rng(seed);
        let m = random_metric(&mut r, points);
        let edges = canonical_graph(&m).edges().len();
        prop_assert_eq!(canonical_graph(&dilate(&m, &ratio(p, q)).unwrap()).edges().len(), edges);
        let root = r.gen_range(0..points);
        prop_assert_eq!(canonical_graph(&rebase(&m, root).unwrap()).edges().len(), edges);
    }

    #[test]
    fn vertex_count_is_twice_edge_count(seed in any::<u64>(), points in 2usize..=6) {
        let m = random_metric(&mut rng(seed), points);
        let all: Vec<Vec<Rational>> = (0..points)
            .flat_map(|i| (0..points).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| molecule(&m, i, j))
            .collect();
        let hull = reduce_to_vertices(&all).unwrap();
        prop_assert_eq!(hull.len(), 2 * canonical_graph(&m).edges().len());
        prop_assert_eq!(free_ball(&m).unwrap().vrep.len(), hull.len());
    }

    #[test]
    fn spanning_trees_are_bases_and_cycles_are_dependent(seed in any::<u64>(), points in 3usize..=6) {
        let mut r = rng(seed);
        let m = random_metric(&mut r, points);
        let g = canonical_graph(&m);
        let mut order: Vec<usize> = (0..g.edges().len()).collect();
        order.shuffle(&mut r);
        // random spanning tree by Kruskal over a shuffled edge order
        let mut comp: Vec<usize> = (0..points).collect();
        let find = |c: &Vec<usize>, mut x: usize| { while c[x] != x { x = c[x]; } x };
        let mut tree = Vec::new();
        let mut chords = Vec::new();
        for &k in &order {
            let e = &g.edges()[k];
            let (a, b) = (find(&comp, e.u), find(&comp, e.v));
            if a == b {
                chords.push(k);
            } else {
                comp[a] = b;
                tree.push(k);
            }
        }
        let mols = |ks: &[usize]| -> Vec<Vec<Rational>> {
            ks.iter().map(|&k| molecule(&m, g.edges()[k].u, g.edges()[k].v)).collect()
        };
        prop_assert_eq!(tree.len(), m.dim());
        prop_assert_eq!(rank(&mols(&tree)), m.dim());
        prop_assert_eq!(rank(&mols(&lex_spanning_tree(&g))), m.dim());
        if let Some(&chord) = chords.first() {
            let mut with_cycle = tree.clone();
            with_cycle.push(chord);
            prop_assert!(rank(&mols(&with_cycle)) < with_cycle.len());
        }
    }

    #[test]
    fn free_norm_is_dual_to_lipschitz_vertices(seed in any::<u64>(), points in 2usize..=6) {
        let mut r = rng(seed);
        let m = random_metric(&mut r, points);
        let model = free_ball(&m).unwrap();
        for _ in 0..4 {
            let phi: Vec<Rational> = (0..m.dim()).map(|_| int(r.gen_range(-5..=5))).collect();
            let dual = model
                .lip_vertices()
                .vertices()
                .iter()
                .map(|f| f.iter().zip(&phi).map(|(a, b)| a * b).sum::<Rational>())
                .max()
                .unwrap();
            prop_assert_eq!(free_norm(&m, &phi), dual);
        }
    }

    #[test]
    fn difference_of_points_has_norm_equal_to_distance(seed in any::<u64>(), points in 2usize..=6) {
        let m = random_metric(&mut rng(seed), points);
        for i in 0..points {
            for j in 0..points {
                if i == j {
                    continue;
                }
                let x: Vec<Rational> = molecule(&m, i, j).into_iter().map(|c| c * m.d(i, j)).collect();
                prop_assert_eq!(&free_norm(&m, &x), m.d(i, j));
            }
        }
    }

    #[test]
    fn decompose_then_reassemble(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (pa, pb) = (r.gen_range(2..=4), r.gen_range(2..=4));
        let a = random_metric(&mut r, pa);
        let b = random_metric(&mut r, pb);
        let m = lipfree::sample::glue_at_random(&mut r, &a, &b);
        let (back, index) = decompose(&m).reassemble();
        prop_assert_eq!(back.root(), index[m.root()]);
        for p in 0..m.len() {
            for q in 0..m.len() {
                prop_assert_eq!(back.d(index[p], index[q]), m.d(p, q));
            }
        }
    }

    #[test]
    fn hanner_composites_sit_on_the_floor(seed in any::<u64>(), max_n in 2usize..=5) {
        let m = random_hanner(&mut rng(seed), max_n);
        prop_assert!(is_hanner(&m));
        prop_assert_eq!(volume_product(&m).product, mahler_floor(m.dim()));
    }

    #[test]
    fn self_isometry_is_identity(seed in any::<u64>(), points in 2usize..=6) {
        let m = random_metric(&mut rng(seed), points);
        let out = isometry_check(&m, &m, 15).unwrap();
        prop_assert!(out.witness().expect("M is isometric to itself").is_identity());
    }

    #[test]
    fn isometry_is_symmetric_and_preserves_balls(seed in any::<u64>(), points in 3usize..=5) {
        let mut r = rng(seed);
        let m = random_metric(&mut r, points);
        let mut perm: Vec<usize> = (0..points).collect();
        perm.shuffle(&mut r);
        let a = ratio(r.gen_range(1..=7), r.gen_range(1..=7));
        let root = r.gen_range(0..points);
        let other = rebase(&dilate(&permuted(&m, &perm), &a).unwrap(), root).unwrap();
        let fwd = isometry_check(&m, &other, DEFAULT_BUDGET).unwrap();
        let back = isometry_check(&other, &m, DEFAULT_BUDGET).unwrap();
        let (Some(w), Some(v)) = (fwd.witness(), back.witness()) else {
            return Err(TestCaseError::fail("isometric pair not recognized in both directions"));
        };
        prop_assert_eq!(volume_product(&m).product, volume_product(&other).product);
        let (bm, bo) = (free_ball(&m).unwrap(), free_ball(&other).unwrap());
        let image: BTreeSet<Vec<Rational>> = bm.vrep.vertices().iter().map(|x| mat_vec(&w.matrix, x)).collect();
        prop_assert_eq!(&image, &set(&bo.vrep));
        let inv = inverse(&w.matrix).expect("witness is invertible");
        let pulled: BTreeSet<Vec<Rational>> = bo.vrep.vertices().iter().map(|x| mat_vec(&inv, x)).collect();
        prop_assert_eq!(&pulled, &set(&bm.vrep));
        let reverse: BTreeSet<Vec<Rational>> = bo.vrep.vertices().iter().map(|x| mat_vec(&v.matrix, x)).collect();
        prop_assert_eq!(&reverse, &set(&bm.vrep));
    }

    #[test]
    fn three_connected_witnesses_come_from_vertex_maps(seed in any::<u64>(), points in 4usize..=5) {
        let mut r = rng(seed);
        let m = lipfree::sample::random_dense_metric(&mut r, points);
        prop_assume!(is_three_connected(&canonical_graph(&m)));
        let mut perm: Vec<usize> = (0..points).collect();
        perm.shuffle(&mut r);
        let other = permuted(&m, &perm);
        let out = isometry_check(&m, &other, DEFAULT_BUDGET).unwrap();
        let w = out.witness().expect("relabeling is an isometry");
        prop_assert!(induced_vertex_map(&m, &other, w).is_some());
    }

    #[test]
    fn products_ignore_dilation_and_root(seed in any::<u64>(), points in 2usize..=5, p in 1i64..=9, q in 1i64..=9) {
        let mut r = rng(seed);
        let m = random_metric(&mut r, points);
        let base = volume_product(&m);
        let root = r.gen_range(0..points);
        prop_assert_eq!(&volume_product(&dilate(&m, &ratio(p, q)).unwrap()).product, &base.product);
        prop_assert_eq!(&volume_product(&rebase(&m, root).unwrap()).product, &base.product);
        prop_assert_eq!(&base.product, &(&base.vol_free * &base.vol_lip));
        prop_assert!(base.gap >= int(0), "gap {} on {:?}", base.gap, m.distances());
    }

    #[test]
    fn diamond_identity_holds(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (pa, pb) = (r.gen_range(2..=4), r.gen_range(2..=4));
        let a = random_metric(&mut r, pa);
        let b = random_metric(&mut r, pb);
        let (lhs, rhs) = diamond_product_identity(&a, &b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn trees_have_zero_gap(seed in any::<u64>(), points in 2usize..=6) {
        let r = volume_product(&random_tree(&mut rng(seed), points));
        prop_assert_eq!(r.gap, int(0));
    }

    #[test]
    fn three_points_never_beat_the_hexagon(seed in any::<u64>()) {
        let m = random_graph_metric(&mut rng(seed), 3);
        prop_assert!(volume_product(&m).product <= int(9));
    }

    #[test]
    fn reports_are_deterministic_and_round_trip(seed in any::<u64>(), points in 2usize..=5) {
        let m = random_metric(&mut rng(seed), points);
        let report = volume_product(&m);
        let a = serde_json::to_string(&report).unwrap();
        prop_assert_eq!(&a, &serde_json::to_string(&volume_product(&m)).unwrap());
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        for (key, want) in [("vol_free", &report.vol_free), ("vol_lip", &report.vol_lip), ("product", &report.product), ("gap", &report.gap)] {
            prop_assert_eq!(&parse_rational(v[key].as_str().unwrap()).unwrap(), want);
        }
        let text = metric_to_value(&m).to_string();
        prop_assert_eq!(parse_metric(&text).unwrap(), m);
    }
}

/// Faces by descending from facets through maximal proper intersections.
fn faces_by_descent(facets: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut level: BTreeSet<Vec<usize>> = facets.iter().cloned().collect();
    while !level.is_empty() {
        let mut below = BTreeSet::new();
        for f in &level {
            let meets: Vec<Vec<usize>> = facets
                .iter()
                .map(|g| f.iter().copied().filter(|v| g.contains(v)).collect::<Vec<usize>>())
                .filter(|x| !x.is_empty() && x.len() < f.len())
                .collect();
            for x in &meets {
                let maximal = !meets.iter().any(|y| y.len() > x.len() && x.iter().all(|v| y.contains(v)));
                if maximal {
                    below.insert(x.clone());
                }
            }
        }
        all.extend(level);
        level = below;
    }
    all
}

fn symmetric_about_centroid(pts: &[Vec<Rational>]) -> bool {
    let k = int(pts.len() as i64);
    let dim = pts[0].len();
    let center: Vec<Rational> = (0..dim).map(|c| pts.iter().map(|p| p[c].clone()).sum::<Rational>() / &k).collect();
    let set: BTreeSet<&Vec<Rational>> = pts.iter().collect();
    pts.iter().all(|p| {
        let q: Vec<Rational> = p.iter().zip(&center).map(|(x, c)| c * int(2) - x).collect();
        set.contains(&q)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn symmetric_faces_match_brute_force(seed in any::<u64>(), points in 3usize..=5) {
        let mut r = rng(seed);
        let m = if r.gen_bool(0.5) { random_metric(&mut r, points) } else { random_hanner(&mut r, points - 1) };
        let model = free_ball(&m).unwrap();
        let verts = model.vrep.vertices();
        let facets = facet_incidence(&model.vrep, &model.facets());
        let brute: Vec<Vec<usize>> = faces_by_descent(&facets)
            .into_iter()
            .filter(|f| {
                let pts: Vec<Vec<Rational>> = f.iter().map(|&v| verts[v].clone()).collect();
                let diffs: Vec<Vec<Rational>> = pts.iter().map(|p| p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect()).collect();
                rank(&diffs) >= 2 && symmetric_about_centroid(&pts)
            })
            .collect();
        let got = symmetric_faces(&m).unwrap();
        let got_sets: Vec<Vec<usize>> = got.iter().map(|f| f.vertex_indices.clone()).collect();
        prop_assert_eq!(got_sets, brute);
        for f in &got {
            let labels: BTreeSet<(usize, usize)> = f.molecules.iter().copied().collect();
            let expected: BTreeSet<(usize, usize)> = match &f.template {
                FaceTemplate::Square { x, y, u, v } => [(*x, *y), (*u, *v), (*x, *v), (*u, *y)].into(),
                FaceTemplate::Midpoints { x, y, mid } => mid.iter().flat_map(|&z| [(*x, z), (z, *y)]).collect(),
            };
            prop_assert_eq!(labels, expected);
        }
    }
}
