use serde_json::json;

use super::{verify_relations, RepError, Representation};
use crate::arith::{roots_in_field, CycloNumber};
use crate::engine::BlockPattern;
use crate::linalg::{char_poly, simultaneous_block_triangularize_with, FieldMatrix, LinalgError};
use crate::manifolds::{Case, Presentation, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellData {
    pub r: usize,
    pub s: usize,
    pub dimension: usize,
    /// One eigenvalue of the `(r, s)` block of `ρ(z)`.
    pub mu: CycloNumber,
    /// `λ'_s · (λ_r^a μ^b)^{−1}`.
    pub residue: CycloNumber,
    pub residue_is_root_of_unity: bool,
}

/// The joint eigenspace data of `(ρ(f), ρ(f'), ρ(z))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockData {
    pub pattern: BlockPattern,
    pub lambdas: Vec<CycloNumber>,
    pub lambda_primes: Vec<CycloNumber>,
    pub cells: Vec<CellData>,
}

impl BlockData {
    pub fn residues_ok(&self) -> bool {
        self.cells.iter().all(|c| c.residue_is_root_of_unity)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "pattern": self.pattern.to_string(),
            "lambda": self.lambdas.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "lambda_prime": self.lambda_primes.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "cells": self.cells.iter().map(|c| json!({
                "cell": [c.r + 1, c.s + 1],
                "dimension": c.dimension,
                "mu": c.mu.to_string(),
                "residue": c.residue.to_string(),
                "root_of_unity": c.residue_is_root_of_unity,
            })).collect::<Vec<_>>(),
        })
    }
}

fn field_eigenvalues(m: &FieldMatrix, name: &str) -> Result<Vec<CycloNumber>, RepError> {
    let roots = roots_in_field(&char_poly(m)?)?;
    if roots.is_empty() {
        return Err(RepError::EigenvaluesOutsideField(format!("{name} has no eigenvalue in the field")));
    }
    Ok(roots)
}

/// Simultaneously triangularizes `ρ(f)`, `ρ(f')` and `ρ(z)`, where `f'` is
/// `t f t⁻¹` for loops and the generator `fp` for edges. Loops use the
/// eigenvalues of `ρ(f)` for both axes, since `f'` is conjugate to `f`.
pub fn extract_block_data(rho: &Representation, p: &Presentation) -> Result<BlockData, RepError> {
    let report = verify_relations(rho, p)?;
    if !report.passed() {
        return Err(RepError::RelationsNotVerified(report.failures.iter().map(|f| f.label.clone()).collect()));
    }
    let (case, b) = match (p.case, p.gluing) {
        (Some(case), Some(b)) => (case, b),
        _ => return Err(RepError::NoPresentation),
    };
    let f = rho.image("f")?.clone();
    let f_prime = match case {
        Case::Loop => rho.evaluate(&Word::parse("t*f*t^-1")?)?,
        Case::Edge => rho.image("fp")?.clone(),
    };
    let z = rho.image("z")?.clone();
    let lambdas = field_eigenvalues(&f, "f")?;
    let lambda_primes = match case {
        Case::Loop => lambdas.clone(),
        Case::Edge => field_eigenvalues(&f_prime, "f'")?,
    };
    let z_eigs = field_eigenvalues(&z, "z")?;
    let tri = simultaneous_block_triangularize_with(&f, &f_prime, &z, &lambdas, &lambda_primes, Some(&z_eigs))
        .map_err(|e| match e {
            LinalgError::IncompleteEigenvalues { .. } | LinalgError::EigenvaluesOutsideField => {
                RepError::EigenvaluesOutsideField(e.to_string())
            }
            other => RepError::Linalg(other),
        })?;
    let layout = &tri.layout;
    let dims: Vec<Vec<u32>> = layout.dims.iter().map(|row| row.iter().map(|&d| d as u32).collect()).collect();
    let pattern = BlockPattern::new(case, dims)?;
    let mut cells = Vec::new();
    for (r, s, _, size) in layout.cells() {
        if size == 0 {
            continue;
        }
        let mu = layout.block(&tri.q, r, s).get(0, 0).clone();
        let predicted = layout.row_eigenvalues[r].pow(b.a)?.checked_mul(&mu.pow(b.b)?)?;
        let residue = layout.col_eigenvalues[s].checked_mul(&predicted.inverse()?)?;
        cells.push(CellData { r, s, dimension: size, residue_is_root_of_unity: residue.is_root_of_unity(), mu, residue });
    }
    Ok(BlockData { pattern, lambdas, lambda_primes, cells })
}
