//! Explicit representations over cyclotomic fields: loading, relation
//! checks, block data, and virtual-unipotence verdicts for single matrices.
//!
//! A verdict here is evidence about one representation. It never shows that
//! a group element is virtually unipotent in every representation; the
//! `ForcedVU` outcomes of [`crate::engine`] are what stand in for that claim.

mod blocks;
pub mod fixtures;
mod representation;
mod vu;

use thiserror::Error;

pub use blocks::{extract_block_data, BlockData, CellData};
pub use representation::{verify_relations, RelationReport, RelatorFailure, Representation};
pub use vu::{analyze_word, is_vu_matrix, VUReport};

use crate::arith::ArithError;
use crate::engine::EngineError;
use crate::linalg::LinalgError;
use crate::manifolds::ManifoldError;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("malformed representation document: {0}")]
    Format(String),
    #[error("image of {0} is singular")]
    Singular(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("unknown generator symbol {0:?}")]
    UnknownGenerator(String),
    #[error("generator sets differ: {0}")]
    GeneratorMismatch(String),
    #[error("relations fail: {}", .0.join(", "))]
    RelationsNotVerified(Vec<String>),
    #[error("eigenvalues outside the field: {0}")]
    EigenvaluesOutsideField(String),
    #[error("representation has no presentation data (case, genus, gluing)")]
    NoPresentation,
    #[error("cyclotomic factorization and Kronecker test disagree on {0}")]
    OracleDisagreement(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}
