//! Values computed here by hand-rolled brute force, independent of the engine.

use lipfree::free_space::{
    boundary_operator, face_of_molecule_vertices, free_norm, molecule,
};
use lipfree::metric::canonical_graph;
use lipfree::polytope::{face_containing, hull_to_hrep, monte_carlo_volume, volume};
use lipfree::product::{complete_graph_product, minimizer_conditions};
use lipfree::rational::{int, ratio, rational_to_f64};
use lipfree::structure::{decompose, is_hanner, is_spiderweb, lip_ball_zonoid_4pt};
use lipfree::{free_ball, MetricSpace, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn metric(rows: &[&[Rational]]) -> MetricSpace {
    MetricSpace::from_distances(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn complete(points: usize) -> MetricSpace {
    MetricSpace::from_distances(
        (0..points)
            .map(|i| (0..points).map(|j| int(i64::from(i != j))).collect())
            .collect(),
    )
    .unwrap()
}

fn det3(m: [&[Rational]; 3]) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

fn gauss_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != int(0)) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != int(0) {
                let f = &rows[i][c] / &rows[r][c];
                for k in 0..cols {
                    let sub = &f * &rows[r][k];
                    rows[i][k] -= sub;
                }
            }
        }
        r += 1;
    }
    r
}

#[test]
fn k3_free_ball_is_a_hexagon_with_six_facets() {
    let model = free_ball(&complete(3)).unwrap();
    let v = model.vrep.vertices();
    assert_eq!(v.len(), 6);
    // a line through two vertices supports a facet iff every vertex is on one side
    let mut lines = Vec::new();
    for a in 0..v.len() {
        for b in (a + 1)..v.len() {
            let normal = [&v[b][1] - &v[a][1], &v[a][0] - &v[b][0]];
            let side = |p: &[Rational]| &normal[0] * (&p[0] - &v[a][0]) + &normal[1] * (&p[1] - &v[a][1]);
            let vals: Vec<Rational> = v.iter().map(|p| side(p)).collect();
            if vals.iter().all(|x| *x >= int(0)) || vals.iter().all(|x| *x <= int(0)) {
                lines.push((a, b));
            }
        }
    }
    assert_eq!(lines.len(), 6);
    assert_eq!(hull_to_hrep(&model.vrep).unwrap().len(), 6);
}

#[test]
fn k4_lipschitz_ball_has_fourteen_vertices() {
    // constraints |x_i| ≤ 1 and |x_i − x_j| ≤ 1 as normal vectors with offset 1
    let mut normals: Vec<Vec<Rational>> = Vec::new();
    for i in 0..3 {
        for s in [1, -1] {
            let mut a = vec![int(0); 3];
            a[i] = int(s);
            normals.push(a);
            for j in (i + 1)..3 {
                let mut b = vec![int(0); 3];
                b[i] = int(s);
                b[j] = int(-s);
                normals.push(b);
            }
        }
    }
    let mut expected = Vec::new();
    for code in 0..27 {
        let x: Vec<Rational> = [code % 3, code / 3 % 3, code / 9].iter().map(|&c| int(c - 1)).collect();
        let val = |a: &[Rational]| a.iter().zip(&x).map(|(p, q)| p * q).sum::<Rational>();
        if normals.iter().any(|a| val(a) > int(1)) {
            continue;
        }
        let tight: Vec<&Vec<Rational>> = normals.iter().filter(|a| val(a) == int(1)).collect();
        let mut vertex = false;
        for a in 0..tight.len() {
            for b in (a + 1)..tight.len() {
                for c in (b + 1)..tight.len() {
                    vertex |= det3([tight[a], tight[b], tight[c]]) != int(0);
                }
            }
        }
        if vertex {
            expected.push(x);
        }
    }
    expected.sort();
    assert_eq!(expected.len(), 14);
    let model = free_ball(&complete(4)).unwrap();
    let mut got = model.lip_vertices().vertices().to_vec();
    got.sort();
    assert_eq!(got, expected);
}

#[test]
fn four_cycle_from_hand_enumeration() {
    let (o, t) = (int(1), int(2));
    let z = int(0);
    let m = metric(&[
        &[z.clone(), o.clone(), t.clone(), o.clone()],
        &[o.clone(), z.clone(), o.clone(), t.clone()],
        &[t.clone(), o.clone(), z.clone(), o.clone()],
        &[o.clone(), t.clone(), o.clone(), z],
    ]);
    let mut kept = Vec::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            let split = (0..4).any(|k| k != i && k != j && *m.d(i, j) == m.d(i, k) + m.d(k, j));
            if !split {
                kept.push((i, j));
            }
        }
    }
    assert_eq!(kept, vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
    let g = canonical_graph(&m);
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    assert_eq!(edges, kept);
}

#[test]
fn path_face_of_the_long_molecule() {
    let (z, o, t) = (int(0), int(1), int(2));
    let m = metric(&[
        &[z.clone(), o.clone(), t.clone()],
        &[o.clone(), z.clone(), o.clone()],
        &[t, o, z],
    ]);
    let mut brute = Vec::new();
    for u in 0..3 {
        for v in 0..3 {
            if u != v && *m.d(0, 2) == m.d(0, u) + m.d(u, v) + m.d(v, 2) {
                brute.push((u, v));
            }
        }
    }
    assert_eq!(brute, vec![(0, 1), (0, 2), (1, 2)]);
    let mut got = face_of_molecule_vertices(&m, 0, 2);
    got.sort();
    assert_eq!(got, brute);

    // the geometric face through m_{0,2} is spanned by m_{0,1} and m_{1,2}
    let model = free_ball(&m).unwrap();
    let face = face_containing(&model.vrep, &model.facets(), &molecule(&m, 0, 2)).unwrap();
    let mut on_face: Vec<Vec<Rational>> = face.vertex_indices.iter().map(|&k| model.vrep.vertices()[k].clone()).collect();
    on_face.sort();
    let mut listed: Vec<Vec<Rational>> = [(0, 1), (1, 2)].iter().map(|&(u, v)| molecule(&m, u, v)).collect();
    listed.sort();
    assert_eq!(on_face, listed);
}

#[test]
fn k4_cycle_space_has_dimension_three() {
    let op = boundary_operator(&complete(4));
    assert_eq!(op.matrix.len(), 4);
    assert_eq!(op.matrix[0].len(), 6);
    let rank = gauss_rank(op.matrix.clone());
    assert_eq!(rank, 3);
    assert_eq!(6 - rank, 3);
    assert_eq!(op.cycle_rank(), 3);
    assert_eq!(op.cycle_basis.len(), 3);
}

#[test]
fn k3_norm_of_e1_plus_e2() {
    let m = complete(3);
    let polar_vertices: Vec<[i64; 2]> = vec![[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1]];
    let by_hand = polar_vertices.iter().map(|f| f[0] + f[1]).max().unwrap();
    assert_eq!(by_hand, 2);
    let mut lip: Vec<Vec<Rational>> = free_ball(&m).unwrap().lip_vertices().vertices().to_vec();
    lip.sort();
    let mut want: Vec<Vec<Rational>> = polar_vertices.iter().map(|f| vec![int(f[0]), int(f[1])]).collect();
    want.sort();
    assert_eq!(lip, want);
    assert_eq!(free_norm(&m, &[int(1), int(1)]), int(by_hand));
}

#[test]
fn k4_is_one_block_and_not_a_spiderweb() {
    let m = complete(4);
    let dec = decompose(&m);
    assert_eq!(dec.components.len(), 1);
    assert!(!is_spiderweb(&dec.components[0]));
    assert!(!is_hanner(&m));
}

#[test]
fn four_point_condition_fails_with_one_long_side() {
    let mut d: Vec<Vec<Rational>> = (0..4).map(|i| (0..4).map(|j| int(i64::from(i != j))).collect()).collect();
    d[2][3] = ratio(3, 2);
    d[3][2] = ratio(3, 2);
    let mut pairings = [&d[0][1] + &d[2][3], &d[0][2] + &d[1][3], &d[0][3] + &d[1][2]];
    pairings.sort();
    assert_eq!(pairings, [int(2), int(2), ratio(5, 2)]);
    let m = MetricSpace::from_distances(d).unwrap();
    assert!(!lip_ball_zonoid_4pt(&m));
    assert!(lip_ball_zonoid_4pt(&complete(4)));
}

#[test]
fn k4_product_arithmetic() {
    let by_hand = ratio(4, 6) * int(20);
    assert_eq!(by_hand, ratio(40, 3));
    assert_eq!(complete_graph_product(3), by_hand);
}

#[test]
fn k4_has_no_bridges() {
    let m = complete(4);
    let g = canonical_graph(&m);
    // removing any single edge of K_4 leaves it connected
    for skip in 0..g.edges().len() {
        let mut reach = vec![false; 4];
        reach[0] = true;
        for _ in 0..4 {
            for (k, e) in g.edges().iter().enumerate() {
                if k != skip && (reach[e.u] || reach[e.v]) {
                    reach[e.u] = true;
                    reach[e.v] = true;
                }
            }
        }
        assert!(reach.iter().all(|&r| r));
    }
    let c = minimizer_conditions(&m).unwrap();
    assert_eq!(c.vertices.len(), 12);
    assert!(c.vertices.iter().all(|v| !v.is_bridge));
    assert!(!c.is_tree);
}

#[test]
fn monte_carlo_brackets_a_random_four_point_ball() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let m = lipfree::sample::random_metric(&mut rng, 4);
    let model = free_ball(&m).unwrap();
    let h = model.facets();
    let exact = rational_to_f64(&volume(&model.vrep, &h).unwrap());
    let mc = monte_carlo_volume(&h, 40_000, 9).unwrap();
    assert!((mc.estimate - exact).abs() <= mc.half_width, "{} vs {exact}", mc.estimate);
}
