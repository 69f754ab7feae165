//! The additive eigenvalue systems as homogeneous integer linear systems.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{BlockPattern, EngineError};
use crate::linalg::IntMatrix;
use crate::manifolds::{Case, GluingMatrix};

/// Largest absolute gluing entry accepted by the engine; keeps every row
/// coefficient and quadratic-form coefficient well inside `i64`.
pub const MAX_ENGINE_ENTRY: i64 = 1 << 20;
pub const MAX_PATTERN_ENTRY: u32 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// Eigenvalue of `f` on the r-th generalized eigenspace.
    Lambda(usize),
    /// Eigenvalue of `f'` (edge only).
    LambdaPrime(usize),
    /// Eigenvalue of `z` on the occupied cell `(r, s)`.
    Mu(usize, usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Lambda(r) => write!(f, "l{}", r + 1),
            Var::LambdaPrime(s) => write!(f, "lp{}", s + 1),
            Var::Mu(r, s) => write!(f, "m{}_{}", r + 1, s + 1),
        }
    }
}

/// What each row of a system encodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RowTag {
    /// Loop: `λ_s − aλ_r − bμ_{r,s} = 0`.
    EigenvalueRelation { r: usize, s: usize },
    /// Loop: `Σ_s n_{r,s}μ_{r,s} + n_{s,r}(cλ_s + dμ_{s,r}) = 0`.
    DeterminantBalance { r: usize },
    /// Edge: `aλ_r + bμ_{r,s} − λ'_s = 0`.
    FiberRelation { r: usize, s: usize },
    /// Edge: `Σ_s n_{r,s}μ_{r,s} = 0`.
    RowDeterminant { r: usize },
    /// Edge: `Σ_r n_{r,s}(cλ_r + dμ_{r,s}) = 0`.
    ColumnDeterminant { s: usize },
}

impl fmt::Display for RowTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowTag::EigenvalueRelation { r, s } => write!(f, "eigenvalue relation ({},{})", r + 1, s + 1),
            RowTag::DeterminantBalance { r } => write!(f, "determinant balance {}", r + 1),
            RowTag::FiberRelation { r, s } => write!(f, "fiber relation ({},{})", r + 1, s + 1),
            RowTag::RowDeterminant { r } => write!(f, "row determinant {}", r + 1),
            RowTag::ColumnDeterminant { s } => write!(f, "column determinant {}", s + 1),
        }
    }
}

/// Integer linear form over a system's variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm(pub Vec<i64>);

impl LinearForm {
    pub fn zero(n: usize) -> Self {
        LinearForm(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        LinearForm(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add_scaled(&mut self, other: &LinearForm, k: i64) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += k * b;
        }
    }

    pub fn scaled(&self, k: i64) -> LinearForm {
        LinearForm(self.0.iter().map(|x| x * k).collect())
    }

    pub fn render(&self, vars: &[Var]) -> String {
        let mut out = String::new();
        for (&c, v) in self.0.iter().zip(vars) {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            let term = if mag == 1 { v.to_string() } else { format!("{mag}*{v}") };
            match (out.is_empty(), c < 0) {
                (true, false) => out.push_str(&term),
                (true, true) => out.push_str(&format!("-{term}")),
                (false, false) => out.push_str(&format!(" + {term}")),
                (false, true) => out.push_str(&format!(" - {term}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLinearSystem {
    pub case: Case,
    pub gluing: GluingMatrix,
    pub pattern: BlockPattern,
    pub variables: Vec<Var>,
    pub rows: Vec<LinearForm>,
    pub tags: Vec<RowTag>,
}

impl IntLinearSystem {
    pub fn index_of(&self, v: Var) -> Option<usize> {
        self.variables.iter().position(|&w| w == v)
    }

    pub fn var_index(&self, v: Var) -> usize {
        self.index_of(v).expect("variable exists in system")
    }

    pub fn matrix(&self) -> IntMatrix {
        let n = self.variables.len();
        let entries: Vec<BigInt> = self.rows.iter().flat_map(|r| r.0.iter().map(|&x| BigInt::from(x))).collect();
        IntMatrix::new(self.rows.len(), n, entries, BigInt::zero()).expect("rectangular")
    }

    pub fn small_rows(&self) -> Vec<Vec<i64>> {
        self.rows.iter().map(|r| r.0.clone()).collect()
    }

    /// The row a tag denotes, recomputed from the gluing matrix and pattern.
    pub fn row_for_tag(&self, tag: RowTag) -> LinearForm {
        let GluingMatrix { a, b, c, d, .. } = self.gluing;
        let n = self.variables.len();
        let mut row = LinearForm::zero(n);
        let mut add = |v: Var, k: i64| {
            if let Some(i) = self.index_of(v) {
                row.0[i] += k;
            }
        };
        let p = &self.pattern;
        match tag {
            RowTag::EigenvalueRelation { r, s } => {
                add(Var::Lambda(s), 1);
                add(Var::Lambda(r), -a);
                add(Var::Mu(r, s), -b);
            }
            RowTag::DeterminantBalance { r } => {
                for s in 0..p.k() {
                    let (nrs, nsr) = (p.get(r, s) as i64, p.get(s, r) as i64);
                    add(Var::Mu(r, s), nrs);
                    add(Var::Lambda(s), nsr * c);
                    add(Var::Mu(s, r), nsr * d);
                }
            }
            RowTag::FiberRelation { r, s } => {
                add(Var::Lambda(r), a);
                add(Var::Mu(r, s), b);
                add(Var::LambdaPrime(s), -1);
            }
            RowTag::RowDeterminant { r } => {
                for s in 0..p.l() {
                    add(Var::Mu(r, s), p.get(r, s) as i64);
                }
            }
            RowTag::ColumnDeterminant { s } => {
                for r in 0..p.k() {
                    let nrs = p.get(r, s) as i64;
                    add(Var::Lambda(r), nrs * c);
                    add(Var::Mu(r, s), nrs * d);
                }
            }
        }
        row
    }

    pub fn render_row(&self, i: usize) -> String {
        format!("{} = 0", self.rows[i].render(&self.variables))
    }
}

fn check_sizes(b: &GluingMatrix, n: &BlockPattern) -> Result<(), EngineError> {
    if b.entries().iter().any(|x| x.abs() > MAX_ENGINE_ENTRY) {
        return Err(EngineError::TooLarge(format!("gluing entries are limited to {MAX_ENGINE_ENTRY}")));
    }
    if n.dims().iter().flatten().any(|&x| x > MAX_PATTERN_ENTRY) {
        return Err(EngineError::TooLarge(format!("pattern entries are limited to {MAX_PATTERN_ENTRY}")));
    }
    Ok(())
}

/// Loop: one eigenvalue relation per occupied cell, then one determinant
/// balance per `r`. Edge: one fiber relation per occupied cell, then the row
/// and column determinant conditions. Variables: `λ` (then `λ'` for edges),
/// then `μ` for occupied cells in lexicographic order.
pub fn build_system(b: &GluingMatrix, n: &BlockPattern) -> Result<IntLinearSystem, EngineError> {
    if b.case != n.case {
        return Err(EngineError::CaseMismatch);
    }
    check_sizes(b, n)?;
    let cells = n.occupied();
    let mut variables: Vec<Var> = (0..n.k()).map(Var::Lambda).collect();
    if n.case == Case::Edge {
        variables.extend((0..n.l()).map(Var::LambdaPrime));
    }
    variables.extend(cells.iter().map(|&(r, s)| Var::Mu(r, s)));
    let mut tags: Vec<RowTag> = Vec::new();
    match n.case {
        Case::Loop => {
            tags.extend(cells.iter().map(|&(r, s)| RowTag::EigenvalueRelation { r, s }));
            tags.extend((0..n.k()).map(|r| RowTag::DeterminantBalance { r }));
        }
        Case::Edge => {
            tags.extend(cells.iter().map(|&(r, s)| RowTag::FiberRelation { r, s }));
            tags.extend((0..n.k()).map(|r| RowTag::RowDeterminant { r }));
            tags.extend((0..n.l()).map(|s| RowTag::ColumnDeterminant { s }));
        }
    }
    let mut system =
        IntLinearSystem { case: n.case, gluing: *b, pattern: n.clone(), variables, rows: Vec::new(), tags: tags.clone() };
    system.rows = tags.iter().map(|&t| system.row_for_tag(t)).collect();
    Ok(system)
}
