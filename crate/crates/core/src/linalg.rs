//! Dense Gaussian elimination over a [`Field`].

use crate::rational::Field;

/// Row-echelon reduction in place; returns the pivot columns.
fn echelon<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Largest magnitude pivot keeps the f64 path stable; for rationals any
        // nonzero entry works, so take the first.
        let pick = (r..rows)
            .filter(|&i| !m[i][c].is_zero_value())
            .max_by(|&a, &b| {
                m[a][c]
                    .abs_value()
                    .partial_cmp(&m[b][c].abs_value())
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
        let Some(p) = pick else { continue };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in (r + 1)..rows {
            if m[i][c].is_zero_value() {
                continue;
            }
            let factor = m[i][c].divide(&pivot);
            for k in c..cols {
                let delta = factor.times(&m[r][k]);
                m[i][k] = m[i][k].minus(&delta);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m = rows.to_vec();
    echelon(&mut m).len()
}

/// Affine dimension of a point set (−1 → `None` for the empty set).
pub fn affine_rank<F: Field>(points: &[Vec<F>]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Vec<Vec<F>> = rest
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a.minus(b)).collect())
        .collect();
    Some(rank(&diffs))
}

/// Determinant of a square matrix.
pub fn determinant<F: Field>(rows: &[Vec<F>]) -> F {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut det = F::one_value();
    for c in 0..n {
        let Some(p) = (c..n).max_by(|&a, &b| {
            m[a][c]
                .abs_value()
                .partial_cmp(&m[b][c].abs_value())
                .unwrap_or(std::cmp::Ordering::Equal)
        }) else {
            return F::zero_value();
        };
        if m[p][c].is_zero_value() {
            return F::zero_value();
        }
        if p != c {
            m.swap(p, c);
            det = det.negated();
        }
        let pivot = m[c][c].clone();
        det = det.times(&pivot);
        for i in (c + 1)..n {
            if m[i][c].is_zero_value() {
                continue;
            }
            let factor = m[i][c].divide(&pivot);
            for k in c..n {
                let delta = factor.times(&m[c][k]);
                m[i][k] = m[i][k].minus(&delta);
            }
        }
    }
    det
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<F: Field>(rows: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = rows.len();
    let mut aug: Vec<Vec<F>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { F::one_value() } else { F::zero_value() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !aug[i][c].is_zero_value())?;
        aug.swap(p, c);
        let pivot = aug[c][c].clone();
        for k in 0..2 * n {
            aug[c][k] = aug[c][k].divide(&pivot);
        }
        for i in 0..n {
            if i == c || aug[i][c].is_zero_value() {
                continue;
            }
            let factor = aug[i][c].clone();
            for k in 0..2 * n {
                let delta = factor.times(&aug[c][k]);
                aug[i][k] = aug[i][k].minus(&delta);
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec<F: Field>(m: &[Vec<F>], v: &[F]) -> Vec<F> {
    m.iter().map(|row| crate::rational::dot(row, v)).collect()
}

pub fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(F::zero_value(), |acc, (x, brow)| acc.plus(&x.times(&brow[j])))
                })
                .collect()
        })
        .collect()
}

pub fn transpose<F: Field>(m: &[Vec<F>]) -> Vec<Vec<F>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// A basis of the right null space `{x : m x = 0}`.
pub fn null_space<F: Field>(m: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut a = m.to_vec();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero_value()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for k in 0..cols {
            a[r][k] = a[r][k].divide(&pivot);
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero_value() {
                continue;
            }
            let factor = a[i][c].clone();
            for k in 0..cols {
                let delta = factor.times(&a[r][k]);
                a[i][k] = a[i][k].minus(&delta);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![F::zero_value(); cols];
            v[free] = F::one_value();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = a[row][free].negated();
            }
            v
        })
        .collect()
}
