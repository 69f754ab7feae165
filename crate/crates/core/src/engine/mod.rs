//! Additive eigenvalue systems attached to a gluing matrix and a block
//! pattern, the forcing arguments for both graph shapes, and the rational
//! row-space oracle that every verdict is checked against.

mod edge_forcing;
mod loop_forcing;
mod oracle;
mod pattern;
mod sweep;
mod system;
mod verdict;

use thiserror::Error;

pub use edge_forcing::{check_forcing_edge, discriminant_audit, quadratic_identity_holds, DiscriminantAudit};
pub use loop_forcing::check_forcing_loop;
pub use oracle::{forced_forms, forced_variables, unequal_lambda_witness};
pub use pattern::{enumerate_edge_patterns, enumerate_loop_patterns, BlockPattern};
pub use sweep::{edge_gluings, loop_gluings, run_sweep, SweepConfig, SweepSummary};
pub use system::{build_system, IntLinearSystem, LinearForm, RowTag, Var, MAX_ENGINE_ENTRY, MAX_PATTERN_ENTRY};
pub use verdict::{ForcingVerdict, Outcome};

use crate::linalg::LinalgError;
use crate::manifolds::{Case, GluingMatrix};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("invalid block pattern: {0}")]
    InvalidPattern(String),
    #[error("gluing matrix and block pattern belong to different cases")]
    CaseMismatch,
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Dispatches on the case of `b`.
pub fn check_forcing(b: &GluingMatrix, n: &BlockPattern) -> Result<ForcingVerdict, EngineError> {
    match b.case {
        Case::Loop => check_forcing_loop(b, n),
        Case::Edge => check_forcing_edge(b, n),
    }
}
