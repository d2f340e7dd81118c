//! Centrally symmetric faces of `B_F(M)` of dimension at least two.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::free_space::free_ball;
use crate::linalg;
use crate::metric::{mid_set, MetricSpace};
use crate::polytope::facet_incidence;
use crate::rational::Rational;

use super::StructureError;

/// Largest `n` for which faces are enumerated.
pub const MAX_FACE_DIM: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type")]
pub enum FaceTemplate {
    /// `conv{m_{x,y}, m_{u,v}, m_{x,v}, m_{u,y}}` with four distinct points.
    #[serde(rename = "a")]
    Square { x: usize, y: usize, u: usize, v: usize },
    /// `conv{m_{x,z}, m_{z,y} : z ∈ Mid(x,y)}`.
    #[serde(rename = "b")]
    Midpoints { x: usize, y: usize, mid: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetricFace {
    pub dimension: usize,
    /// Indices into `free_ball(M).vrep`.
    pub vertex_indices: Vec<usize>,
    /// Molecule labels `(i, j)` of those vertices.
    pub molecules: Vec<(usize, usize)>,
    pub template: FaceTemplate,
}

/// All nonempty intersections of facets, as sorted vertex index sets.
pub(crate) fn face_lattice(facets: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let mut faces: BTreeSet<Vec<usize>> = facets.iter().cloned().collect();
    let mut frontier: Vec<Vec<usize>> = faces.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for g in facets {
                let meet: Vec<usize> = f.iter().copied().filter(|v| g.contains(v)).collect();
                if !meet.is_empty() && faces.insert(meet.clone()) {
                    next.push(meet);
                }
            }
        }
        frontier = next;
    }
    faces
}

pub(crate) fn is_centrally_symmetric(points: &[&Vec<Rational>]) -> bool {
    let k = Rational::from_integer((points.len() as i64).into());
    let dim = points[0].len();
    let twice_center: Vec<Rational> = (0..dim)
        .map(|c| points.iter().map(|p| p[c].clone()).sum::<Rational>() * Rational::from_integer(2.into()) / &k)
        .collect();
    points.iter().all(|p| {
        let image: Vec<Rational> = twice_center.iter().zip(p.iter()).map(|(c, x)| c - x).collect();
        points.iter().any(|q| **q == image)
    })
}

fn match_template(m: &MetricSpace, labels: &BTreeSet<(usize, usize)>) -> Option<FaceTemplate> {
    if labels.len() == 4 {
        for &(x, y) in labels {
            for &(u, v) in labels {
                let distinct = BTreeSet::from([x, y, u, v]).len() == 4;
                let d = m.d(x, y);
                if distinct
                    && labels.contains(&(x, v))
                    && labels.contains(&(u, y))
                    && m.d(u, v) == d
                    && m.d(x, v) == d
                    && m.d(u, y) == d
                {
                    return Some(FaceTemplate::Square { x, y, u, v });
                }
            }
        }
    }
    let n = m.len();
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let mid = mid_set(m, x, y);
            if mid.is_empty() || 2 * mid.len() != labels.len() {
                continue;
            }
            let expected: BTreeSet<(usize, usize)> =
                mid.iter().flat_map(|&z| [(x, z), (z, y)]).collect();
            if &expected == labels {
                return Some(FaceTemplate::Midpoints { x, y, mid });
            }
        }
    }
    None
}

/// Every centrally symmetric face of dimension `≥ 2`, each matched to one of
/// the two templates. Faces are listed in lexicographic order of vertex sets.
pub fn symmetric_faces(m: &MetricSpace) -> Result<Vec<SymmetricFace>, StructureError> {
    if m.dim() > MAX_FACE_DIM {
        return Err(StructureError::DimensionTooLarge {
            n: m.dim(),
            max: MAX_FACE_DIM,
        });
    }
    if m.dim() < 2 {
        return Ok(Vec::new());
    }
    let model = free_ball(m)?;
    let facets = facet_incidence(&model.vrep, &model.facets());
    let verts = model.vrep.vertices();
    let mut out = Vec::new();
    for face in face_lattice(&facets) {
        if face.len() < 3 {
            continue;
        }
        let pts: Vec<&Vec<Rational>> = face.iter().map(|&v| &verts[v]).collect();
        let owned: Vec<Vec<Rational>> = pts.iter().map(|p| (*p).clone()).collect();
        let dimension = linalg::affine_rank(&owned).unwrap_or(0);
        if dimension < 2 || !is_centrally_symmetric(&pts) {
            continue;
        }
        let molecules: Vec<(usize, usize)> = face.iter().map(|&v| model.vertex_labels[v]).collect();
        let labels: BTreeSet<(usize, usize)> = molecules.iter().copied().collect();
        let template =
            match_template(m, &labels).ok_or_else(|| StructureError::TemplateMismatch(molecules.clone()))?;
        out.push(SymmetricFace {
            dimension,
            vertex_indices: face,
            molecules,
            template,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::tests::{cycle, k, k2};

    #[test]
    fn triangle_has_none() {
        assert!(symmetric_faces(&k(3)).unwrap().is_empty());
    }

    #[test]
    fn four_cycle_squares() {
        let faces = symmetric_faces(&cycle(4)).unwrap();
        assert_eq!(faces.len(), 6);
        assert!(faces.iter().all(|f| f.dimension == 2 && f.vertex_indices.len() == 4));
        let squares = faces
            .iter()
            .filter(|f| matches!(f.template, FaceTemplate::Square { .. }))
            .count();
        assert_eq!(squares, 2);
    }

    #[test]
    fn spiderweb_hub_facets() {
        let faces = symmetric_faces(&k2(4)).unwrap();
        let big: Vec<&SymmetricFace> = faces.iter().filter(|f| f.vertex_indices.len() == 8).collect();
        assert_eq!(big.len(), 2);
        for f in big {
            assert_eq!(f.dimension, 4);
            assert!(matches!(f.template, FaceTemplate::Midpoints { .. }));
        }
    }

    #[test]
    fn lattice_of_square() {
        let facets = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]];
        let lattice = face_lattice(&facets);
        assert_eq!(lattice.len(), 8);
    }
}
