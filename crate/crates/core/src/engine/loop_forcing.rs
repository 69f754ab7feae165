//! Forcing for a single block glued to itself.
//!
//! Eliminating `μ` from the determinant balance of row `r` leaves
//! `Σ_s (n_{r,s} + n_{s,r}) λ_s = (a − d) n_r λ_r`. On a connected support
//! graph an extremal-value argument then pins `λ` down, and each eigenvalue
//! relation turns that into the target forms.

use itertools::Itertools;

use super::oracle::{forced_forms, unequal_lambda_witness};
use super::{build_system, BlockPattern, EngineError, ForcingVerdict, IntLinearSystem, LinearForm, Outcome, RowTag, Var};
use crate::manifolds::{Case, GluingMatrix};

/// Level sets are enumerated explicitly up to this many eigenvalues;
/// beyond it the equivalent connectivity statement is recorded instead.
const MAX_EXPLICIT_LEVEL_SETS: usize = 12;

pub fn check_forcing_loop(b: &GluingMatrix, n: &BlockPattern) -> Result<ForcingVerdict, EngineError> {
    if b.case != Case::Loop || n.case != Case::Loop {
        return Err(EngineError::CaseMismatch);
    }
    if b.det() != -1 {
        return Ok(ForcingVerdict::hypothesis_violated("det B = -1"));
    }
    let diff = b.a - b.d;
    if diff.abs() < 2 {
        return Ok(ForcingVerdict::hypothesis_violated("|a - d| >= 2"));
    }
    let system = build_system(b, n)?;
    let mut trace = vec![format!(
        "system: {} variables, {} rows; det B = -1, b = {}, a - d = {}",
        system.variables.len(),
        system.rows.len(),
        b.b,
        diff
    )];
    for r in 0..n.k() {
        let eliminated = eliminate_mu(&system, r);
        let (lhs, rhs) = lambda_balance(&system, r);
        let mut expected = lhs.clone();
        expected.add_scaled(&rhs, -1);
        if eliminated != expected {
            return Err(EngineError::Internal(format!("mu elimination for row {} does not give the lambda balance", r + 1)));
        }
        trace.push(format!(
            "balance {} with mu eliminated: {} = {}",
            r + 1,
            lhs.render(&system.variables),
            rhs.render(&system.variables)
        ));
    }

    let components = n.components();
    if components.len() > 1 {
        return Ok(decomposable(&system, &components, diff, trace));
    }

    trace.extend(level_set_steps(n));
    let targets: Vec<LinearForm> = if diff >= 2 {
        trace.push(
            "extremal argument: after a global sign change the maximum of lambda is positive unless lambda = 0; \
             a proper maximal level set would need (a-d) n_r lambda_r < 2 n_r lambda_r, so lambda is constant"
                .to_string(),
        );
        target_forms(&system, b.a - 1, |r, s| (s, r, -1))
    } else {
        trace.push(
            "extremal argument: at r maximizing |lambda_r|, |a-d| n_r |lambda_r| <= 2 n_r |lambda_r| forces \
             lambda_s = -lambda_r on every edge (lambda = 0 when a-d < -2), so lambda_s + lambda_r = 0 on occupied cells"
                .to_string(),
        );
        target_forms(&system, b.a + 1, |r, s| (s, r, 1))
    };
    for (form, &(r, s)) in targets.iter().zip(&n.occupied()) {
        trace.push(format!(
            "target ({},{}): {} = {} - [eigenvalue relation ({},{})]",
            r + 1,
            s + 1,
            form.render(&system.variables),
            lambda_combination(&system, r, s, diff >= 2).render(&system.variables),
            r + 1,
            s + 1
        ));
    }
    conclude(&system, targets, trace)
}

/// `(a ± 1)λ_r + bμ_{r,s}` for each occupied cell. `pair` returns the
/// indices and sign of the λ combination the form reduces to.
fn target_forms(
    system: &IntLinearSystem,
    lambda_coeff: i64,
    pair: impl Fn(usize, usize) -> (usize, usize, i64),
) -> Vec<LinearForm> {
    let n = system.variables.len();
    system
        .pattern
        .occupied()
        .into_iter()
        .map(|(r, s)| {
            let mut form = LinearForm::zero(n);
            form.0[system.var_index(Var::Lambda(r))] += lambda_coeff;
            form.0[system.var_index(Var::Mu(r, s))] += system.gluing.b;
            // the form equals a λ combination minus the eigenvalue relation
            let (i, j, sign) = pair(r, s);
            let mut check = lambda_pair(system, i, j, sign);
            check.add_scaled(&system.row_for_tag(RowTag::EigenvalueRelation { r, s }), -1);
            debug_assert_eq!(check, form);
            form
        })
        .collect()
}

fn lambda_pair(system: &IntLinearSystem, i: usize, j: usize, sign: i64) -> LinearForm {
    let mut f = LinearForm::zero(system.variables.len());
    f.0[system.var_index(Var::Lambda(i))] += 1;
    f.0[system.var_index(Var::Lambda(j))] += sign;
    f
}

/// `λ_s − λ_r` (constant λ) or `λ_s + λ_r` (alternating λ).
fn lambda_combination(system: &IntLinearSystem, r: usize, s: usize, constant: bool) -> LinearForm {
    if constant {
        lambda_pair(system, s, r, -1)
    } else {
        lambda_pair(system, s, r, 1)
    }
}

/// `b · balance_r + Σ (coefficient of μ_{cell} in balance_r) · relation_{cell}`;
/// contains no `μ`.
fn eliminate_mu(system: &IntLinearSystem, r: usize) -> LinearForm {
    let balance = system.row_for_tag(RowTag::DeterminantBalance { r });
    let mut out = balance.scaled(system.gluing.b);
    for (idx, var) in system.variables.iter().enumerate() {
        if let Var::Mu(p, q) = *var {
            let coeff = balance.0[idx];
            if coeff != 0 {
                out.add_scaled(&system.row_for_tag(RowTag::EigenvalueRelation { r: p, s: q }), coeff);
            }
        }
    }
    out
}

/// `(Σ_s (n_{r,s} + n_{s,r}) λ_s, (a − d) n_r λ_r)`.
fn lambda_balance(system: &IntLinearSystem, r: usize) -> (LinearForm, LinearForm) {
    let p = &system.pattern;
    let n = system.variables.len();
    let mut lhs = LinearForm::zero(n);
    for s in 0..p.k() {
        lhs.0[system.var_index(Var::Lambda(s))] += (p.get(r, s) + p.get(s, r)) as i64;
    }
    let mut rhs = LinearForm::zero(n);
    rhs.0[system.var_index(Var::Lambda(r))] = (system.gluing.a - system.gluing.d) * p.row_sum(r) as i64;
    (lhs, rhs)
}

/// Every proper nonempty subset of eigenvalue indices has an edge leaving it.
fn level_set_steps(n: &BlockPattern) -> Vec<String> {
    let k = n.k();
    if k == 1 {
        return vec!["single eigenvalue: lambda is trivially constant".to_string()];
    }
    if k > MAX_EXPLICIT_LEVEL_SETS {
        return vec![format!("support graph on {k} eigenvalues is connected: no proper level set is closed")];
    }
    let mut steps = Vec::new();
    for mask in 1u32..(1 << k) - 1 {
        let inside: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
        let crossing = inside
            .iter()
            .cartesian_product((0..k).filter(|i| mask & (1 << i) == 0))
            .find(|&(&r, s)| n.adjacent(r, s))
            .expect("connected support graph");
        steps.push(format!(
            "level set {{{}}} is not closed: n_{},{} + n_{},{} > 0",
            inside.iter().map(|i| i + 1).join(","),
            crossing.0 + 1,
            crossing.1 + 1,
            crossing.1 + 1,
            crossing.0 + 1
        ));
    }
    steps
}

fn decomposable(system: &IntLinearSystem, components: &[Vec<usize>], diff: i64, mut trace: Vec<String>) -> ForcingVerdict {
    let comps = components.iter().map(|c| format!("{{{}}}", c.iter().map(|i| i + 1).join(","))).join(", ");
    trace.push(format!("support graph disconnected: components {comps}"));
    let witness = unequal_lambda_witness(system);
    match &witness {
        Some(w) => trace.push(format!(
            "oracle: kernel vector with unequal lambda: {}",
            system.variables.iter().zip(w).map(|(v, x)| format!("{v}={x}")).join(", ")
        )),
        None => trace.push(format!(
            "oracle: every solution has lambda constant; with a - d = {diff} the lambda balance is nonsingular and lambda = 0"
        )),
    }
    ForcingVerdict {
        outcome: Outcome::Decomposable,
        targets: vec![],
        target_forms: vec![],
        trace,
        oracle_confirmed: witness.is_some(),
        witness,
        violated_hypothesis: None,
    }
}

pub(super) fn conclude(
    system: &IntLinearSystem,
    targets: Vec<LinearForm>,
    mut trace: Vec<String>,
) -> Result<ForcingVerdict, EngineError> {
    let verdicts = forced_forms(system, &targets)?;
    let rendered: Vec<String> = targets.iter().map(|f| f.render(&system.variables)).collect();
    let refuted: Vec<&String> = rendered.iter().zip(&verdicts).filter(|(_, &ok)| !ok).map(|(r, _)| r).collect();
    let outcome = if refuted.is_empty() {
        trace.push(format!("oracle: all {} targets lie in the rational row space", targets.len()));
        Outcome::ForcedVU
    } else {
        trace.push(format!(
            "DISAGREEMENT: the procedure claims these targets but the oracle refutes them: {}",
            refuted.iter().join(", ")
        ));
        Outcome::NotForced
    };
    Ok(ForcingVerdict {
        outcome,
        oracle_confirmed: refuted.is_empty(),
        targets: rendered,
        target_forms: targets,
        trace,
        witness: None,
        violated_hypothesis: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(a: i64, b: i64, c: i64, d: i64) -> GluingMatrix {
        GluingMatrix::new(Case::Loop, a, b, c, d).unwrap()
    }

    fn pat(s: &str) -> BlockPattern {
        BlockPattern::parse(Case::Loop, s).unwrap()
    }

    #[test]
    fn single_cell() {
        let v = check_forcing_loop(&lp(3, 1, 4, 1), &pat("2")).unwrap();
        assert_eq!(v.outcome, Outcome::ForcedVU);
        assert_eq!(v.targets, ["2*l1 + m1_1"]);
        assert!(v.oracle_confirmed);
    }

    #[test]
    fn full_two_by_two() {
        let v = check_forcing_loop(&lp(3, 1, 4, 1), &pat("1,1;1,1")).unwrap();
        assert_eq!(v.outcome, Outcome::ForcedVU);
        assert_eq!(v.targets.len(), 4);
        assert!(v.trace.iter().any(|t| t == "balance 1 with mu eliminated: 2*l1 + 2*l2 = 4*l1"));
    }

    #[test]
    fn diagonal_is_decomposable() {
        let v = check_forcing_loop(&lp(3, 1, 4, 1), &pat("1,0;0,1")).unwrap();
        assert_eq!(v.outcome, Outcome::Decomposable);
        assert!(v.oracle_confirmed);
        let w = v.witness.unwrap();
        assert_ne!(w[0], w[1]);
    }

    #[test]
    fn hypotheses() {
        let v = check_forcing_loop(&lp(2, 1, 1, 1), &pat("1")).unwrap();
        assert_eq!(v.outcome, Outcome::HypothesisViolated);
        let v = check_forcing_loop(&lp(1, 1, 1, 2), &pat("1")).unwrap();
        assert_eq!(v.violated_hypothesis.as_deref(), Some("det B = -1"));
    }

    #[test]
    fn negative_difference_uses_alternating_targets() {
        // a - d = -2
        let b = lp(0, 1, 1, 2);
        let v = check_forcing_loop(&b, &pat("0,1;1,0")).unwrap();
        assert_eq!(v.outcome, Outcome::ForcedVU);
        assert_eq!(v.targets[0], "l1 + m1_2");
    }
}
