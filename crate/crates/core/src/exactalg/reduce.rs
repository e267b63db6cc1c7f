//! Invariant factors of large sparse matrices.
//!
//! Boundary matrices are very sparse and most columns carry a `±1` entry. A
//! unit pivot can be eliminated without changing the remaining invariant
//! factors: after clearing its row and column, `SNF(M) = diag(1, SNF(M'))`
//! where `M'` is the Schur complement. Unit pivots are removed greedily by
//! Markowitz cost, and the (usually tiny) remainder goes through the dense
//! Smith normal form.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{smith_normal_form, IntMatrix, SparseIntMatrix};

/// Nonzero invariant factors `d_1 | d_2 | …` of `m`.
pub fn invariant_factors(m: &SparseIntMatrix) -> Vec<BigInt> {
    let (units, rest) = eliminate_unit_pivots(m);
    let mut out = vec![BigInt::one(); units];
    if rest.rows() > 0 && rest.cols() > 0 {
        out.extend(smith_normal_form(&rest, false).invariant_factors());
    }
    out
}

pub fn rank(m: &SparseIntMatrix) -> usize {
    invariant_factors(m).len()
}

/// Returns the number of unit pivots eliminated and the dense remainder
/// (zero rows and columns dropped).
pub fn eliminate_unit_pivots(m: &SparseIntMatrix) -> (usize, IntMatrix) {
    let mut cols: Vec<Option<BTreeMap<usize, BigInt>>> = m
        .columns()
        .iter()
        .map(|c| Some(c.iter().cloned().collect()))
        .collect();
    let mut row_cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.rows()];
    for (j, c) in m.columns().iter().enumerate() {
        for (i, _) in c {
            row_cols[*i].insert(j);
        }
    }

    let mut units = 0;
    while let Some((pr, pc)) = best_unit_pivot(&cols, &row_cols) {
        let pivot_col = cols[pc].take().expect("pivot column is live");
        let pivot = pivot_col[&pr].clone();
        let others: Vec<usize> = row_cols[pr].iter().copied().filter(|&j| j != pc).collect();
        for j in others {
            let col = cols[j].as_mut().expect("live column");
            // pivot is a unit, so its inverse is itself
            let factor = &col[&pr] * &pivot;
            for (r, v) in &pivot_col {
                let delta = v * &factor;
                let entry = col.entry(*r).or_default();
                let was_zero = entry.is_zero();
                *entry -= delta;
                if entry.is_zero() {
                    col.remove(r);
                    row_cols[*r].remove(&j);
                } else if was_zero {
                    row_cols[*r].insert(j);
                }
            }
            debug_assert!(!col.contains_key(&pr));
        }
        for r in pivot_col.keys() {
            row_cols[*r].remove(&pc);
        }
        debug_assert!(row_cols[pr].is_empty());
        units += 1;
    }

    let live_cols: Vec<usize> = (0..cols.len())
        .filter(|&j| cols[j].as_ref().is_some_and(|c| !c.is_empty()))
        .collect();
    let live_rows: Vec<usize> = (0..row_cols.len())
        .filter(|&i| !row_cols[i].is_empty())
        .collect();
    let mut row_pos = vec![usize::MAX; row_cols.len()];
    for (k, &i) in live_rows.iter().enumerate() {
        row_pos[i] = k;
    }
    let mut rest = IntMatrix::zeros(live_rows.len(), live_cols.len());
    for (k, &j) in live_cols.iter().enumerate() {
        for (i, v) in cols[j].as_ref().unwrap() {
            rest[(row_pos[*i], k)] = v.clone();
        }
    }
    (units, rest)
}

fn best_unit_pivot(
    cols: &[Option<BTreeMap<usize, BigInt>>],
    row_cols: &[BTreeSet<usize>],
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), usize)> = None;
    for (j, col) in cols.iter().enumerate() {
        let Some(col) = col else { continue };
        let clen = col.len();
        if clen == 0 {
            continue;
        }
        for (i, v) in col {
            if !v.abs().is_one() {
                continue;
            }
            let cost = (clen - 1) * (row_cols[*i].len() - 1);
            if cost == 0 {
                return Some((*i, j));
            }
            if best.is_none_or(|(_, c)| cost < c) {
                best = Some(((*i, j), cost));
            }
        }
    }
    best.map(|(p, _)| p)
}
