//! Exact integer linear algebra: dense and sparse matrices over `Z`, the
//! Smith normal form, and abelian group presentations of homology.

mod group;
mod matrix;
mod presentation;
pub mod reduce;
mod snf;
mod sparse;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

pub use group::HomologyGroup;
pub use matrix::IntMatrix;
pub use presentation::HomologyPresentation;
pub use snf::{smith_normal_form, SmithDecomposition};
pub use sparse::SparseIntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("matrix shapes {left:?} and {right:?} do not compose")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("consecutive boundary maps do not compose to zero")]
    CompositionNotZero,
    #[error("cannot parse group `{0}`")]
    GroupSyntax(String),
}

fn check_composable(d_n: &IntMatrix, d_next: &IntMatrix, basis: usize) -> Result<(), AlgebraError> {
    if d_n.cols() != basis || d_next.rows() != basis {
        return Err(AlgebraError::DimensionMismatch {
            left: d_n.shape(),
            right: d_next.shape(),
        });
    }
    if !(d_n * d_next).is_zero() {
        return Err(AlgebraError::CompositionNotZero);
    }
    Ok(())
}

/// `H_n = ker d_n / im d_{n+1}` for `d_n : C_n → C_{n-1}` and
/// `d_{n+1} : C_{n+1} → C_n`, with `C_n` of rank `basis_size`.
pub fn homology_from_boundaries(
    d_n: &IntMatrix,
    d_next: &IntMatrix,
    basis_size: usize,
) -> Result<HomologyGroup, AlgebraError> {
    check_composable(d_n, d_next, basis_size)?;
    let rank_n = smith_normal_form(d_n, false).rank;
    let next = smith_normal_form(d_next, false);
    Ok(group_from_factors(basis_size, rank_n, &next.invariant_factors()))
}

/// Same as [`homology_from_boundaries`] on sparse input, via unit-pivot
/// pre-elimination.
pub fn homology_from_sparse_boundaries(
    d_n: &SparseIntMatrix,
    d_next: &SparseIntMatrix,
    basis_size: usize,
) -> Result<HomologyGroup, AlgebraError> {
    if d_n.cols() != basis_size || d_next.rows() != basis_size {
        return Err(AlgebraError::DimensionMismatch {
            left: d_n.shape(),
            right: d_next.shape(),
        });
    }
    if !d_n.checked_mul(d_next)?.is_zero() {
        return Err(AlgebraError::CompositionNotZero);
    }
    let rank_n = reduce::rank(d_n);
    Ok(group_from_factors(
        basis_size,
        rank_n,
        &reduce::invariant_factors(d_next),
    ))
}

/// Assembles `H_n` from the rank of `d_n` and the invariant factors of `d_{n+1}`.
pub fn group_from_factors(basis_size: usize, rank_n: usize, next_factors: &[BigInt]) -> HomologyGroup {
    HomologyGroup {
        rank: basis_size - rank_n - next_factors.len(),
        torsion: next_factors.iter().filter(|d| !d.is_one()).cloned().collect(),
    }
}
