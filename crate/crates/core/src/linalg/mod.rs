//! Exact matrices over rings and fields: echelon forms, characteristic
//! polynomials, generalized eigenspaces, simultaneous triangularization,
//! Smith normal form and the kernel-forcing decision.

mod charpoly;
mod forcing;
mod matrix;
mod snf;
mod triangularize;

pub use charpoly::{char_poly, eval_poly_at_matrix, generalized_eigenspace};
pub use forcing::{forced_columns, forced_columns_small, forces_zero, integer_kernel_basis};
pub use matrix::{FieldMatrix, IntMatrix, Matrix, RatMatrix, Rref};
pub use snf::{smith_normal_form, SmithForm};
pub use triangularize::{
    is_block_upper_triangular, is_upper_triangular, simultaneous_block_triangularize,
    simultaneous_block_triangularize_with, BlockLayout, Triangularized,
};

use crate::arith::ArithError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("rows have different lengths")]
    RaggedRows,
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("incompatible shapes {left:?} and {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("matrix is singular")]
    Singular,
    #[error("linear system has no solution")]
    Inconsistent,
    #[error("matrices {0} do not commute")]
    NotCommuting(&'static str),
    #[error("eigenvalue {0} listed twice")]
    DuplicateEigenvalue(String),
    #[error("{0} is not an eigenvalue")]
    NotAnEigenvalue(String),
    #[error("eigenvalues of {matrix} account for dimension {found} of {expected}; enlarge the field")]
    IncompleteEigenvalues { matrix: &'static str, found: usize, expected: usize },
    #[error("no common eigenvector with eigenvalues in the field")]
    EigenvaluesOutsideField,
    #[error("column index {index} out of range for {cols} columns")]
    IndexOutOfRange { index: usize, cols: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
}
