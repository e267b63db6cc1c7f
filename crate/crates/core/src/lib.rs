//! Weighted and stratified homology of weighted simplicial complexes.

pub mod chains;
pub mod complex;
pub mod exactalg;
pub mod generators;
pub mod homology;
pub mod subdivision;
pub mod suites;

use thiserror::Error;

pub use complex::ComplexError;
pub use exactalg::AlgebraError;
pub use num_bigint::BigInt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),
    #[error("morphisms do not induce maps on stratified homology")]
    MorphismOnStHomology,
    #[error("invalid example specification: {0}")]
    InvalidSpec(String),
}
