//! Incremental double description for pointed polyhedral cones.
//!
//! Constraints are inserted in the order given; the combinatorial adjacency
//! test keeps the ray set equal to the extreme rays of the partial cone.

use crate::linalg;
use crate::rational::{dot, Field};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub(crate) fn new(bits: usize) -> Self {
        Self {
            words: vec![0; bits.div_ceil(64).max(1)],
        }
    }

    pub(crate) fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn intersection(&self, other: &Self) -> Self {
        Self {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub(crate) fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub(crate) fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[derive(Debug, Clone)]
struct Ray<F> {
    coords: Vec<F>,
    zeros: BitSet,
}

/// The cone `{z : row·z ≥ 0}` is not pointed: a nonzero linear subspace lies in it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct NotPointed;

pub(crate) fn normalize<F: Field>(v: &mut [F]) {
    let scale = v
        .iter()
        .map(Field::abs_value)
        .fold(F::zero_value(), |m, x| if x > m { x } else { m });
    if scale.is_zero_value() {
        return;
    }
    for x in v.iter_mut() {
        *x = x.divide(&scale);
    }
}

/// Extreme rays of `{z ∈ F^d : row·z ≥ 0 for every row}`.
pub(crate) fn extreme_rays<F: Field>(rows: &[Vec<F>], d: usize) -> Result<Vec<Vec<F>>, NotPointed> {
    let m = rows.len();
    let rows: Vec<Vec<F>> = rows
        .iter()
        .map(|r| {
            let mut r = r.clone();
            normalize(&mut r);
            r
        })
        .collect();

    // Initial simplicial cone from the first d independent rows.
    let mut basis: Vec<usize> = Vec::with_capacity(d);
    let mut chosen: Vec<Vec<F>> = Vec::with_capacity(d);
    for (i, r) in rows.iter().enumerate() {
        if basis.len() == d {
            break;
        }
        chosen.push(r.clone());
        if linalg::rank(&chosen) == chosen.len() {
            basis.push(i);
        } else {
            chosen.pop();
        }
    }
    if basis.len() < d {
        return Err(NotPointed);
    }
    let inv = linalg::inverse(&chosen).ok_or(NotPointed)?;
    let mut rays: Vec<Ray<F>> = (0..d)
        .map(|k| {
            let mut coords: Vec<F> = inv.iter().map(|row| row[k].clone()).collect();
            normalize(&mut coords);
            let mut zeros = BitSet::new(m);
            for (j, &b) in basis.iter().enumerate() {
                if j != k {
                    zeros.insert(b);
                }
            }
            Ray { coords, zeros }
        })
        .collect();

    for (i, row) in rows.iter().enumerate() {
        if basis.contains(&i) {
            continue;
        }
        let values: Vec<F> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        for (k, v) in values.iter().enumerate() {
            if v.is_positive_value() {
                positive.push(k);
            } else if v.is_negative_value() {
                negative.push(k);
            }
        }
        if negative.is_empty() {
            for (k, v) in values.iter().enumerate() {
                if v.is_zero_value() {
                    rays[k].zeros.insert(i);
                }
            }
            continue;
        }

        let mut created = Vec::new();
        for &p in &positive {
            for &q in &negative {
                let common = rays[p].zeros.intersection(&rays[q].zeros);
                if common.len() + 2 < d {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(k, r)| k != p && k != q && common.is_subset(&r.zeros));
                if blocked {
                    continue;
                }
                let vp = &values[p];
                let vq = values[q].negated();
                let mut coords: Vec<F> = rays[q]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(a, b)| vp.times(a).plus(&vq.times(b)))
                    .collect();
                normalize(&mut coords);
                let mut zeros = common;
                zeros.insert(i);
                created.push(Ray { coords, zeros });
            }
        }

        let mut next = Vec::with_capacity(rays.len() + created.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if values[k].is_negative_value() {
                continue;
            }
            if values[k].is_zero_value() {
                r.zeros.insert(i);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
    }

    Ok(rays.into_iter().map(|r| r.coords).collect())
}
