use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{AlgebraError, IntMatrix};

/// Column-compressed integer matrix used as working storage for boundary and
/// chain maps; each column keeps its nonzero entries sorted by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseIntMatrix {
            rows: n,
            cols: n,
            columns: (0..n).map(|i| vec![(i, BigInt::from(1))]).collect(),
        }
    }

    /// Builds from unsorted per-column entries; duplicate rows are summed and
    /// zeros dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, BigInt)>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (r, v) in col {
                    assert!(r < rows, "row {r} out of range {rows}");
                    *acc.entry(r).or_default() += v;
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseIntMatrix {
            rows,
            cols,
            columns,
        }
    }

    pub fn from_dense(m: &IntMatrix) -> Self {
        let columns = (0..m.cols())
            .map(|j| {
                (0..m.rows())
                    .filter(|&i| !m[(i, j)].is_zero())
                    .map(|i| (i, m[(i, j)].clone()))
                    .collect()
            })
            .collect();
        SparseIntMatrix {
            rows: m.rows(),
            cols: m.cols(),
            columns,
        }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                m[(*i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn column(&self, j: usize) -> &[(usize, BigInt)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<(usize, BigInt)>] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.columns[j]
            .binary_search_by_key(&i, |(r, _)| *r)
            .map(|k| self.columns[j][k].1.clone())
            .unwrap_or_default()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .columns
                .iter()
                .enumerate()
                .all(|(j, col)| col.len() == 1 && col[0].0 == j && col[0].1 == BigInt::from(1))
    }

    pub fn checked_mul(&self, rhs: &SparseIntMatrix) -> Result<SparseIntMatrix, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::DimensionMismatch {
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let columns = rhs
            .columns
            .iter()
            .map(|rcol| {
                let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (k, b) in rcol {
                    for (i, a) in &self.columns[*k] {
                        *acc.entry(*i).or_default() += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(SparseIntMatrix {
            rows: self.rows,
            cols: rhs.cols,
            columns,
        })
    }

    /// Restricts to the given rows and columns; rows are renumbered by their
    /// position in `rows`.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> SparseIntMatrix {
        let mut new_row = vec![usize::MAX; self.rows];
        for (k, &r) in rows.iter().enumerate() {
            new_row[r] = k;
        }
        let columns = cols
            .iter()
            .map(|&j| {
                let mut col: Vec<(usize, BigInt)> = self.columns[j]
                    .iter()
                    .filter(|(r, _)| new_row[*r] != usize::MAX)
                    .map(|(r, v)| (new_row[*r], v.clone()))
                    .collect();
                col.sort_by_key(|(r, _)| *r);
                col
            })
            .collect();
        SparseIntMatrix {
            rows: rows.len(),
            cols: cols.len(),
            columns,
        }
    }
}
