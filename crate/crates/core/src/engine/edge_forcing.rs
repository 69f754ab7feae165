//! Forcing for two blocks glued along one torus.
//!
//! With `c = 0` the relations reduce to `μ_{r,s} = (λ'_s − λ_r)/b` and
//! vanishing row and column sums of `n_{r,s}μ_{r,s}`, and an induction on
//! `k + ℓ` peels one column at a time. With `c > 0` a sum of binary quadratic
//! forms, each semidefinite, is an integer combination of the relations.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use serde::Serialize;

use super::loop_forcing::conclude;
use super::{build_system, BlockPattern, EngineError, ForcingVerdict, IntLinearSystem, LinearForm, RowTag, Var};
use crate::manifolds::{Case, GluingMatrix};

pub fn check_forcing_edge(b: &GluingMatrix, n: &BlockPattern) -> Result<ForcingVerdict, EngineError> {
    if b.case != Case::Edge || n.case != Case::Edge {
        return Err(EngineError::CaseMismatch);
    }
    for (ok, what) in [(b.a >= 1, "a >= 1"), (b.b >= 1, "b >= 1"), (b.c >= 0, "c >= 0"), (b.d >= 0, "d >= 0")] {
        if !ok {
            return Ok(ForcingVerdict::hypothesis_violated(what));
        }
    }
    let system = build_system(b, n)?;
    let mut trace = vec![format!(
        "system: {} variables, {} rows; B = [{}, {}; {}, {}]",
        system.variables.len(),
        system.rows.len(),
        b.a,
        b.b,
        b.c,
        b.d
    )];
    let nvars = system.variables.len();
    let mu_units = |sys: &IntLinearSystem| -> Vec<LinearForm> {
        n.occupied().into_iter().map(|(r, s)| LinearForm::unit(nvars, sys.var_index(Var::Mu(r, s)))).collect()
    };
    let targets = if b.c == 0 {
        if b.a != 1 || b.d != 1 {
            return Err(EngineError::Internal("c = 0 with |det B| = 1 must give a = d = 1".to_string()));
        }
        trace.push("c = 0 and |det B| = 1 with a, d >= 0 give a = d = 1".to_string());
        check_reduced_rows(&system)?;
        trace.push(format!(
            "reduced relations: l_r + {}*m_rs = lp_s, sum_s n_rs m_rs = 0, sum_r n_rs m_rs = 0",
            b.b
        ));
        trace.extend(peel_induction(n)?);
        mu_units(&system)
    } else {
        if !quadratic_identity_holds(&system) {
            return Err(EngineError::Internal("quadratic identity does not hold for the built system".to_string()));
        }
        trace.push(format!(
            "identity: sum n_rs ({}*m_rs^2 + {}*l_r*m_rs + {}*l_r^2) = sum_s lp_s [column determinant s] \
             + sum n_rs ({}*m_rs + {}*l_r) [fiber relation (r,s)] - {} sum_r l_r [row determinant r]",
            b.b * b.d,
            b.a * b.d,
            b.a * b.c,
            b.d,
            b.c,
            b.b * b.c
        ));
        let audit = discriminant_audit(b);
        if !audit.claim_holds {
            return Err(EngineError::Internal(format!("discriminant audit failed: {audit:?}")));
        }
        trace.push(format!(
            "discriminant (det B - 3bc)ad = {} ({}), leading coefficient ac = {} > 0",
            audit.value,
            if audit.strictly_negative { "negative definite summands" } else { "semidefinite summands" },
            b.a * b.c
        ));
        let mut t: Vec<LinearForm> = (0..n.k()).map(|r| LinearForm::unit(nvars, system.var_index(Var::Lambda(r)))).collect();
        if b.d > 0 {
            trace.push("each summand vanishes, and with d > 0 each forces l_r = m_rs = 0".to_string());
            t.extend(mu_units(&system));
        } else {
            trace.push("each summand ac*l_r^2 vanishes and every row is occupied, so l_r = 0".to_string());
        }
        t
    };
    conclude(&system, targets, trace)
}

/// With `a = d = 1, c = 0`: fiber rows carry `λ_r` with coefficient 1 and
/// column determinants carry no `λ`.
fn check_reduced_rows(system: &IntLinearSystem) -> Result<(), EngineError> {
    for (tag, row) in system.tags.iter().zip(&system.rows) {
        let ok = match *tag {
            RowTag::FiberRelation { r, .. } => row.0[system.var_index(Var::Lambda(r))] == 1,
            RowTag::ColumnDeterminant { .. } => {
                system.variables.iter().zip(&row.0).all(|(v, &x)| !matches!(v, Var::Lambda(_)) || x == 0)
            }
            _ => true,
        };
        if !ok {
            return Err(EngineError::Internal(format!("{tag} does not have the reduced shape")));
        }
    }
    Ok(())
}

/// Induction on `k + ℓ` over sub-rectangles `R × C`, with all `μ` outside
/// already known to vanish. Writing `μ_{r,s} = α_s − β_r`, let `s₀` maximize
/// `α` over columns occupied in `R × C`. Every occupied `μ_{r,s₀}` is the
/// largest entry of its row, the row's weighted sum is 0, so `μ_{r,s₀} ≥ 0`;
/// the column sum of `s₀` is 0, so all of them vanish and `s₀` peels off.
/// Which column maximizes depends on the values, so every occupied column is
/// explored.
fn peel_induction(n: &BlockPattern) -> Result<Vec<String>, EngineError> {
    if n.k() > 16 || n.l() > 16 {
        return Err(EngineError::TooLarge("the peeling induction handles at most 16 rows and columns".to_string()));
    }
    let mut memo = HashMap::new();
    let all_rows = (1u32 << n.k()) - 1;
    let all_cols = (1u32 << n.l()) - 1;
    if !peel(n, all_rows, all_cols, &mut memo) {
        return Err(EngineError::Internal("peeling induction reached a rectangle with no occupied column".to_string()));
    }
    let mut steps = Vec::new();
    let (mut rows, mut cols) = (all_rows, all_cols);
    loop {
        rows = live_rows(n, rows, cols);
        let Some((r, s)) = first_occupied(n, rows, cols) else { break };
        steps.push(format!(
            "k+l = {}: maximal cell ({},{}) by lexicographic tie-break; column {} vanishes: {}",
            rows.count_ones() + cols.count_ones(),
            r + 1,
            s + 1,
            s + 1,
            (0..n.k()).filter(|&q| rows & (1 << q) != 0 && n.is_occupied(q, s)).map(|q| Var::Mu(q, s)).join(", ")
        ));
        cols &= !(1 << s);
    }
    steps.push(format!("induction verified on {} sub-rectangles", memo.len()));
    Ok(steps)
}

fn live_rows(n: &BlockPattern, rows: u32, cols: u32) -> u32 {
    (0..n.k())
        .filter(|&r| rows & (1 << r) != 0 && (0..n.l()).any(|s| cols & (1 << s) != 0 && n.is_occupied(r, s)))
        .fold(0, |m, r| m | (1 << r))
}

fn first_occupied(n: &BlockPattern, rows: u32, cols: u32) -> Option<(usize, usize)> {
    n.occupied().into_iter().find(|&(r, s)| rows & (1 << r) != 0 && cols & (1 << s) != 0)
}

fn peel(n: &BlockPattern, rows: u32, cols: u32, memo: &mut HashMap<(u32, u32), bool>) -> bool {
    let rows = live_rows(n, rows, cols);
    if rows == 0 {
        return true;
    }
    if let Some(&v) = memo.get(&(rows, cols)) {
        return v;
    }
    let candidates: Vec<usize> =
        (0..n.l()).filter(|&s| cols & (1 << s) != 0 && (0..n.k()).any(|r| rows & (1 << r) != 0 && n.is_occupied(r, s))).collect();
    let ok = !candidates.is_empty() && candidates.iter().all(|&s| peel(n, rows, cols & !(1 << s), memo));
    memo.insert((rows, cols), ok);
    ok
}

type Quadratic = BTreeMap<(usize, usize), i128>;

fn product(u: &LinearForm, v: &LinearForm, k: i128, out: &mut Quadratic) {
    for (i, &x) in u.0.iter().enumerate().filter(|(_, &x)| x != 0) {
        for (j, &y) in v.0.iter().enumerate().filter(|(_, &y)| y != 0) {
            *out.entry((i.min(j), i.max(j))).or_insert(0) += k * x as i128 * y as i128;
        }
    }
}

/// `Σ n_{r,s}(bdμ² + adλ_rμ + acλ_r²)` equals
/// `Σ_s λ'_s·[column det s] + Σ n_{r,s}(dμ + cλ_r)·[fiber (r,s)] − bc Σ_r λ_r·[row det r]`
/// as quadratic forms, using the system's rows.
pub fn quadratic_identity_holds(system: &IntLinearSystem) -> bool {
    let GluingMatrix { a, b, c, d, .. } = system.gluing;
    let nv = system.variables.len();
    let unit = |v: Var| LinearForm::unit(nv, system.var_index(v));
    let mut lhs = Quadratic::new();
    let mut rhs = Quadratic::new();
    for (r, s) in system.pattern.occupied() {
        let nrs = system.pattern.get(r, s) as i128;
        let (l, m) = (unit(Var::Lambda(r)), unit(Var::Mu(r, s)));
        product(&m, &m, nrs * (b * d) as i128, &mut lhs);
        product(&l, &m, nrs * (a * d) as i128, &mut lhs);
        product(&l, &l, nrs * (a * c) as i128, &mut lhs);
        let mut multiplier = m.scaled(d);
        multiplier.add_scaled(&l, c);
        product(&multiplier, &system.row_for_tag(RowTag::FiberRelation { r, s }), nrs, &mut rhs);
    }
    for s in 0..system.pattern.l() {
        product(&unit(Var::LambdaPrime(s)), &system.row_for_tag(RowTag::ColumnDeterminant { s }), 1, &mut rhs);
    }
    for r in 0..system.pattern.k() {
        product(&unit(Var::Lambda(r)), &system.row_for_tag(RowTag::RowDeterminant { r }), -(b * c) as i128, &mut rhs);
    }
    lhs.retain(|_, v| *v != 0);
    rhs.retain(|_, v| *v != 0);
    lhs == rhs
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscriminantAudit {
    /// `(det B − 3bc)·a·d`.
    pub value: i128,
    /// `(ad)² − 4abcd`, the same quantity expanded.
    pub expanded: i128,
    /// `a ≥ 1, b ≥ 1, c ≥ 1, d ≥ 0, |det B| = 1`.
    pub applicable: bool,
    pub nonpositive: bool,
    pub strictly_negative: bool,
    /// When applicable: `value ≤ 0`, and `value < 0` exactly when `d > 0`.
    pub claim_holds: bool,
}

/// Discriminant of `bdμ² + adλμ + acλ²` divided by `λ²`.
pub fn discriminant_audit(b: &GluingMatrix) -> DiscriminantAudit {
    let (a, bb, c, d) = (b.a as i128, b.b as i128, b.c as i128, b.d as i128);
    let det = a * d - bb * c;
    let value = (det - 3 * bb * c) * a * d;
    let expanded = (a * d) * (a * d) - 4 * a * bb * c * d;
    let applicable = a >= 1 && bb >= 1 && c >= 1 && d >= 0 && det.abs() == 1;
    let nonpositive = value <= 0;
    let strictly_negative = value < 0;
    let claim_holds = value == expanded && (!applicable || (nonpositive && strictly_negative == (d > 0)));
    DiscriminantAudit { value, expanded, applicable, nonpositive, strictly_negative, claim_holds }
}
