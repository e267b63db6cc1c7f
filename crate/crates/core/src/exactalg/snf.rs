//! Smith normal form by pivoted elimination over the integers.
//!
//! The pivot at each stage is the entry of least nonzero absolute value.
//! Row and column reduction against the pivot repeats until its row and
//! column are clear; if some remaining entry is not divisible by the pivot,
//! that entry's row is added to the pivot row and the stage continues, which
//! strictly decreases the pivot and so terminates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `U · M · V = D` with `D` diagonal and `d_1 | d_2 | … | d_rank`, all positive.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub d: IntMatrix,
    pub u: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    /// Inverses of `u` and `v`, kept alongside when transforms are requested.
    pub u_inv: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
    pub rank: usize,
}

impl SmithDecomposition {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Transforms {
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

struct Reducer {
    a: IntMatrix,
    t: Option<Transforms>,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_rows(i, j);
        if let Some(t) = &mut self.t {
            t.u.swap_rows(i, j);
            t.u_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_cols(i, j);
        if let Some(t) = &mut self.t {
            t.v.swap_cols(i, j);
            t.v_inv.swap_rows(i, j);
        }
    }

    /// row[target] += k · row[source]
    fn add_row(&mut self, target: usize, source: usize, k: &BigInt) {
        self.a.add_row_multiple(target, source, k);
        if let Some(t) = &mut self.t {
            t.u.add_row_multiple(target, source, k);
            t.u_inv.add_col_multiple(source, target, &-k);
        }
    }

    /// col[target] += k · col[source]
    fn add_col(&mut self, target: usize, source: usize, k: &BigInt) {
        self.a.add_col_multiple(target, source, k);
        if let Some(t) = &mut self.t {
            t.v.add_col_multiple(target, source, k);
            t.v_inv.add_row_multiple(source, target, &-k);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(t) = &mut self.t {
            t.u.negate_row(i);
            t.u_inv.negate_col(i);
        }
    }

    /// Position of the smallest nonzero |entry| in the trailing block at `s`.
    fn min_pivot(&self, s: usize) -> Option<(usize, usize)> {
        let (m, n) = self.a.shape();
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in s..m {
            for j in s..n {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                    let unit = ax == BigInt::from(1);
                    best = Some(((i, j), ax));
                    if unit {
                        return best.map(|(p, _)| p);
                    }
                }
            }
        }
        best.map(|(p, _)| p)
    }

    /// Smallest nonzero entry in row `s` / column `s` beyond the pivot.
    fn min_in_cross(&self, s: usize) -> Option<(usize, usize)> {
        let (m, n) = self.a.shape();
        let mut best: Option<((usize, usize), BigInt)> = None;
        let cands = (s..m).map(|i| (i, s)).chain((s + 1..n).map(|j| (s, j)));
        for (i, j) in cands {
            let x = &self.a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                best = Some(((i, j), ax));
            }
        }
        best.map(|(p, _)| p)
    }

    fn non_divisible(&self, s: usize) -> Option<usize> {
        let (m, n) = self.a.shape();
        let p = &self.a[(s, s)];
        for i in s + 1..m {
            for j in s + 1..n {
                let x = &self.a[(i, j)];
                if !x.is_zero() && !x.is_multiple_of(p) {
                    return Some(i);
                }
            }
        }
        None
    }

    fn run(&mut self) -> usize {
        let (m, n) = self.a.shape();
        let mut s = 0;
        while s < m.min(n) {
            let Some((pi, pj)) = self.min_pivot(s) else {
                break;
            };
            self.swap_rows(s, pi);
            self.swap_cols(s, pj);
            loop {
                let mut dirty = false;
                for i in s + 1..m {
                    if self.a[(i, s)].is_zero() {
                        continue;
                    }
                    let q = &self.a[(i, s)] / &self.a[(s, s)];
                    if !q.is_zero() {
                        self.add_row(i, s, &-q);
                    }
                    dirty |= !self.a[(i, s)].is_zero();
                }
                for j in s + 1..n {
                    if self.a[(s, j)].is_zero() {
                        continue;
                    }
                    let q = &self.a[(s, j)] / &self.a[(s, s)];
                    if !q.is_zero() {
                        self.add_col(j, s, &-q);
                    }
                    dirty |= !self.a[(s, j)].is_zero();
                }
                if dirty {
                    // a remainder smaller than the pivot survived; promote it
                    if let Some((i, j)) = self.min_in_cross(s) {
                        self.swap_rows(s, i);
                        self.swap_cols(s, j);
                    }
                    continue;
                }
                if let Some(i) = self.non_divisible(s) {
                    self.add_row(s, i, &BigInt::from(1));
                    continue;
                }
                break;
            }
            if self.a[(s, s)].is_negative() {
                self.negate_row(s);
            }
            s += 1;
        }
        s
    }
}

/// Computes the Smith normal form of `m`. With `want_transforms`, the result
/// carries unimodular `u`, `v` (and their inverses) with `u · m · v = d`.
pub fn smith_normal_form(m: &IntMatrix, want_transforms: bool) -> SmithDecomposition {
    let (rows, cols) = m.shape();
    let t = want_transforms.then(|| Transforms {
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    });
    let mut r = Reducer { a: m.clone(), t };
    let rank = r.run();
    let (u, u_inv, v, v_inv) = match r.t {
        Some(t) => (Some(t.u), Some(t.u_inv), Some(t.v), Some(t.v_inv)),
        None => (None, None, None, None),
    };
    SmithDecomposition {
        d: r.a,
        u,
        v,
        u_inv,
        v_inv,
        rank,
    }
}
