//! Exact two-phase simplex on dense tableaus, Bland's rule.
//!
//! Solves `min c·x  s.t.  A x = b, x ≥ 0`.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// rows × (vars + 1); last column is the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// objective row, `cost - z` form; last entry is `-value`.
    obj: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn vars(&self) -> usize {
        self.obj.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let width = self.obj.len();
        let p = self.rows[r][c].clone();
        for k in 0..width {
            self.rows[r][k] = &self.rows[r][k] / &p;
        }
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for k in 0..width {
                let delta = &f * &self.rows[r][k];
                self.rows[i][k] -= delta;
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for k in 0..width {
                let delta = &f * &self.rows[r][k];
                self.obj[k] -= delta;
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations over columns `< allowed`; `false` on unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let rhs = self.vars();
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let t = &row[rhs] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, bt)) => t < *bt || (t == *bt && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, t));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

pub fn minimize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    // Phase one: artificials n..n+m, rhs made nonnegative.
    let width = n + m + 1;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut r: Vec<Rational> = row
            .iter()
            .map(|x| if flip { -x } else { x.clone() })
            .collect();
        r.extend((0..m).map(|j| {
            if i == j {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            }
        }));
        r.push(if flip { -bi } else { bi.clone() });
        rows.push(r);
    }
    let mut obj = vec![Rational::zero(); width];
    for r in &rows {
        for k in 0..n {
            obj[k] -= &r[k];
        }
        obj[width - 1] -= &r[width - 1];
    }
    let mut t = Tableau {
        rows,
        obj,
        basis: (n..n + m).collect(),
    };
    t.optimize(n);
    if !t.obj[width - 1].is_zero() {
        return LpOutcome::Infeasible;
    }
    // Drive artificials out of the basis where possible; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    // Phase two on the original columns.
    let rhs = width - 1;
    let mut obj = vec![Rational::zero(); width];
    obj[..n].clone_from_slice(c);
    for (r, &bv) in t.rows.iter().zip(&t.basis) {
        if c[bv].is_zero() {
            continue;
        }
        let f = c[bv].clone();
        for k in 0..width {
            obj[k] -= &f * &r[k];
        }
    }
    t.obj = obj;
    for row in &mut t.rows {
        for v in row.iter_mut().take(n + m).skip(n) {
            *v = Rational::zero();
        }
    }
    if !t.optimize(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &bv) in t.rows.iter().zip(&t.basis) {
        x[bv] = r[rhs].clone();
    }
    let value = -t.obj[rhs].clone();
    LpOutcome::Optimal { x, value }
}

/// Whether `A x = b, x ≥ 0` has a solution.
pub fn feasible(a: &[Vec<Rational>], b: &[Rational]) -> bool {
    let zeros = vec![Rational::zero(); a.first().map_or(0, Vec::len)];
    matches!(minimize(&zeros, a, b), LpOutcome::Optimal { .. })
}
