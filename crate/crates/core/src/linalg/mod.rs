//! Exact rational linear algebra: matrices, elementary row operations,
//! Gauss-Jordan elimination with a pluggable pivot search, and extraction of
//! the solution set of `A x = b`.

mod matrix;
mod rref;
mod solve;
pub mod text;

use thiserror::Error;

pub use matrix::{AugmentedSystem, Matrix};
pub use rref::{
    classical_pivot_scan, replay_row_ops, rref, rref_classical, ClassicalScan, PivotStrategy,
    RowOperation, RrefResult,
};
pub use solve::{solve, solve_from_rref, SolutionKind, SolutionSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("row scale factor must be nonzero")]
    ZeroFactor,
    #[error("source and destination row are both {0}")]
    SameRow(usize),
}
