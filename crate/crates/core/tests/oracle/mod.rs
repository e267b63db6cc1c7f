//! Reference computations written directly from the definitions, kept
//! separate from the library's sparse elimination and SNF code.

#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use orbihom::complex::{Simplex, WeightedComplex};

/// Sparse columns `(row, value)`.
pub type Columns = Vec<Vec<(usize, i64)>>;

/// Boundary `C_n → C_{n-1}` over the simplices of `k` not excluded by `skip`,
/// in the order of `k.simplices(n)`. `weighted` selects `∂^w` over `∂`.
pub fn boundary(k: &WeightedComplex, n: usize, weighted: bool, skip: &dyn Fn(&Simplex) -> bool) -> (usize, Columns) {
    let rows: Vec<&Simplex> = if n == 0 {
        Vec::new()
    } else {
        k.simplices(n - 1).iter().filter(|s| !skip(s)).collect()
    };
    let row_of: HashMap<&Simplex, usize> = rows.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let cols = k
        .simplices(n)
        .iter()
        .filter(|s| !skip(s))
        .map(|s| {
            let mut col = Vec::new();
            if n == 0 {
                return col;
            }
            let w = k.weight(s).unwrap() as i64;
            for i in 0..=n {
                let mut vs = s.vertices().to_vec();
                vs.remove(i);
                let face = Simplex::new(vs).unwrap();
                if let Some(&r) = row_of.get(&face) {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    let c = if weighted { w / k.weight(&face).unwrap() as i64 } else { 1 };
                    col.push((r, sign * c));
                }
            }
            col
        })
        .collect();
    (rows.len(), cols)
}

/// True for simplices all of whose vertices have weight at least 2.
pub fn singular(k: &WeightedComplex) -> impl Fn(&Simplex) -> bool + '_ {
    move |s: &Simplex| s.vertices().iter().all(|&v| k.vertex_weight(v) >= 2)
}

pub fn nothing(_: &Simplex) -> bool {
    false
}

pub fn dense(rows: usize, cols: &Columns) -> Vec<Vec<BigInt>> {
    let mut m = vec![vec![BigInt::zero(); cols.len()]; rows];
    for (j, col) in cols.iter().enumerate() {
        for &(i, v) in col {
            m[i][j] += v;
        }
    }
    m
}

/// `a · b` for sparse column matrices.
pub fn compose(a: &Columns, b: &Columns) -> Vec<HashMap<usize, i64>> {
    b.iter()
        .map(|col| {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for &(k, v) in col {
                for &(i, w) in &a[k] {
                    *acc.entry(i).or_default() += v * w;
                }
            }
            acc.retain(|_, v| *v != 0);
            acc
        })
        .collect()
}

pub fn from_library(m: &orbihom::exactalg::SparseIntMatrix) -> Columns {
    m.columns()
        .iter()
        .map(|c| c.iter().map(|(i, v)| (*i, i64::try_from(v).unwrap())).collect())
        .collect()
}

/// Nonzero invariant factors by textbook Smith reduction.
pub fn invariant_factors(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = smallest(&a, t, t..m, t..n) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..n {
                        let d = &q * &a[t][j];
                        a[i][j] -= d;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let d = &q * &row[t];
                        row[j] -= d;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                // move the smallest remainder in row or column t to the pivot
                let (i, j) = smallest_cross(&a, t);
                a.swap(t, i);
                for row in a.iter_mut() {
                    row.swap(t, j);
                }
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    for j in t..n {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

fn smallest(
    a: &[Vec<BigInt>],
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn smallest_cross(a: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut size = a[t][t].abs();
    for (i, row) in a.iter().enumerate().skip(t + 1) {
        if !row[t].is_zero() && row[t].abs() < size {
            size = row[t].abs();
            best = (i, t);
        }
    }
    for j in t + 1..a[t].len() {
        if !a[t][j].is_zero() && a[t][j].abs() < size {
            size = a[t][j].abs();
            best = (t, j);
        }
    }
    best
}

/// `(rank, torsion)` per dimension from the boundary matrices.
pub fn homology(k: &WeightedComplex, weighted: bool, skip: &dyn Fn(&Simplex) -> bool) -> Vec<(usize, Vec<BigInt>)> {
    let top = k.num_dims();
    let mut factors = Vec::with_capacity(top + 1);
    let mut sizes = Vec::with_capacity(top);
    for n in 0..=top {
        if n < top {
            sizes.push(k.simplices(n).iter().filter(|s| !skip(s)).count());
            let (rows, cols) = boundary(k, n, weighted, skip);
            factors.push(invariant_factors(dense(rows, &cols)));
        } else {
            factors.push(Vec::new());
        }
    }
    (0..top)
        .map(|n| {
            let rank = sizes[n] - factors[n].len() - factors[n + 1].len();
            let torsion = factors[n + 1].iter().filter(|d| !d.is_one()).cloned().collect();
            (rank, torsion)
        })
        .collect()
}

/// Rank over `F_p` by Gaussian elimination.
pub fn rank_mod_p(rows: usize, cols: &Columns, p: u64) -> usize {
    let p = p as i64;
    let mut m: Vec<Vec<i64>> = vec![vec![0; cols.len()]; rows];
    for (j, col) in cols.iter().enumerate() {
        for &(i, v) in col {
            m[i][j] = (m[i][j] + v).rem_euclid(p);
        }
    }
    let mut rank = 0;
    let ncols = cols.len();
    for c in 0..ncols {
        let Some(r) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, r);
        let inv = mod_inverse(m[rank][c], p);
        for j in c..ncols {
            m[rank][j] = m[rank][j] * inv % p;
        }
        for i in 0..rows {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c];
                for j in c..ncols {
                    m[i][j] = (m[i][j] - f * m[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    let mut r = 1;
    let mut base = a.rem_euclid(p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}

/// Dimensions over `F_p` of the homology of the chains kept by `skip`.
pub fn betti_mod_p(k: &WeightedComplex, weighted: bool, skip: &dyn Fn(&Simplex) -> bool, p: u64) -> Vec<usize> {
    let top = k.num_dims();
    let ranks: Vec<usize> = (0..=top)
        .map(|n| {
            if n == top {
                0
            } else {
                let (rows, cols) = boundary(k, n, weighted, skip);
                rank_mod_p(rows, &cols, p)
            }
        })
        .collect();
    (0..top)
        .map(|n| k.simplices(n).iter().filter(|s| !skip(s)).count() - ranks[n] - ranks[n + 1])
        .collect()
}

fn det(m: &[Vec<i64>]) -> BigInt {
    match m.len() {
        0 => BigInt::one(),
        1 => BigInt::from(m[0][0]),
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect())
                    .collect();
                let term = BigInt::from(m[0][j]) * det(&minor);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors `d_k / d_{k-1}` with `d_k` the gcd of all `k × k` minors.
pub fn minor_gcd_factors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}
