//! Central triangulation: the boundary is triangulated face by face (pulling
//! from each face's lexicographically smallest vertex) and coned to the
//! vertex centroid.

use crate::linalg;
use crate::rational::{lex_cmp, Field};

use super::{facet_incidence, HPolytope, VPolytope};

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    intersect(a, b).len() == a.len()
}

/// Facets of a face: the inclusion-maximal proper nonempty intersections with
/// the polytope's facets.
fn subfacets(face: &[usize], facets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut cands: Vec<Vec<usize>> = facets
        .iter()
        .map(|f| intersect(face, f))
        .filter(|s| !s.is_empty() && s.len() < face.len())
        .collect();
    cands.sort();
    cands.dedup();
    let maximal: Vec<Vec<usize>> = cands
        .iter()
        .filter(|s| !cands.iter().any(|t| t.len() > s.len() && is_subset(s, t)))
        .cloned()
        .collect();
    maximal
}

fn triangulate_face(
    face: &[usize],
    dim: usize,
    facets: &[Vec<usize>],
    rank: &[usize],
    out: &mut Vec<Vec<usize>>,
) {
    if face.len() == dim + 1 {
        out.push(face.to_vec());
        return;
    }
    if dim == 0 {
        // only reachable with an inconsistent incidence in the f64 path
        return;
    }
    let apex = *face
        .iter()
        .min_by_key(|&&v| rank[v])
        .expect("faces are nonempty");
    for sub in subfacets(face, facets) {
        if sub.contains(&apex) {
            continue;
        }
        let start = out.len();
        triangulate_face(&sub, dim - 1, facets, rank, out);
        for s in &mut out[start..] {
            s.insert(0, apex);
        }
    }
}

/// Boundary triangulation, grouped by facet: one list of `(n-1)`-simplices
/// (as vertex indices) per halfspace.
pub fn triangulate_boundary<F: Field>(p: &VPolytope<F>, h: &HPolytope<F>) -> Vec<Vec<Vec<usize>>> {
    let facets = facet_incidence(p, h);
    let mut order: Vec<usize> = (0..p.vertices.len()).collect();
    order.sort_by(|&a, &b| lex_cmp(&p.vertices[a], &p.vertices[b]));
    let mut rank = vec![0; order.len()];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    facets
        .iter()
        .map(|f| {
            let mut out = Vec::new();
            if f.len() >= p.dim {
                triangulate_face(f, p.dim - 1, &facets, &rank, &mut out);
            }
            out
        })
        .collect()
}

/// Volume of the cone from the centroid over each facet, in halfspace order.
pub fn facet_cone_volumes<F: Field>(p: &VPolytope<F>, h: &HPolytope<F>) -> Vec<F> {
    let n = p.dim;
    let count = F::from_i64(p.vertices.len() as i64);
    let centroid: Vec<F> = (0..n)
        .map(|i| {
            p.vertices
                .iter()
                .fold(F::zero_value(), |acc, v| acc.plus(&v[i]))
                .divide(&count)
        })
        .collect();
    let n_fact = (1..=n as i64).fold(F::one_value(), |acc, k| acc.times(&F::from_i64(k)));
    triangulate_boundary(p, h)
        .into_iter()
        .map(|simplices| {
            simplices
                .iter()
                .map(|s| {
                    let rows: Vec<Vec<F>> = s
                        .iter()
                        .map(|&v| {
                            p.vertices[v]
                                .iter()
                                .zip(&centroid)
                                .map(|(a, c)| a.minus(c))
                                .collect()
                        })
                        .collect();
                    linalg::determinant(&rows).abs_value()
                })
                .fold(F::zero_value(), |acc, d| acc.plus(&d))
                .divide(&n_fact)
        })
        .collect()
}
