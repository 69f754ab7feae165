use num_bigint::BigInt;

use super::{EngineError, IntLinearSystem, LinearForm, Var};
use crate::linalg::{forced_columns_small, integer_kernel_basis};

/// For each form, whether it vanishes on every solution of the system.
///
/// Each form gets an auxiliary column `t_j` and the row `form_j − t_j = 0`;
/// the form is forced iff `t_j` is.
pub fn forced_forms(system: &IntLinearSystem, forms: &[LinearForm]) -> Result<Vec<bool>, EngineError> {
    let n = system.variables.len();
    let m = forms.len();
    let mut rows: Vec<Vec<i64>> = system
        .rows
        .iter()
        .map(|r| {
            let mut row = r.0.clone();
            row.resize(n + m, 0);
            row
        })
        .collect();
    for (j, form) in forms.iter().enumerate() {
        if form.0.len() != n {
            return Err(EngineError::Internal("target form has the wrong length".to_string()));
        }
        let mut row = form.0.clone();
        row.resize(n + m, 0);
        row[n + j] = -1;
        rows.push(row);
    }
    let targets: Vec<usize> = (n..n + m).collect();
    Ok(forced_columns_small(&rows, n + m, &targets)?)
}

/// Variables forced to zero by the system.
pub fn forced_variables(system: &IntLinearSystem) -> Result<Vec<Var>, EngineError> {
    let all: Vec<usize> = (0..system.variables.len()).collect();
    let flags = forced_columns_small(&system.small_rows(), system.variables.len(), &all)?;
    Ok(system.variables.iter().zip(flags).filter(|(_, f)| *f).map(|(v, _)| *v).collect())
}

/// A kernel vector whose `λ` entries are not all equal. If one exists, some
/// basis vector is one.
pub fn unequal_lambda_witness(system: &IntLinearSystem) -> Option<Vec<BigInt>> {
    let lambdas: Vec<usize> =
        (0..system.variables.len()).filter(|&i| matches!(system.variables[i], Var::Lambda(_))).collect();
    integer_kernel_basis(&system.matrix()).into_iter().find(|v| lambdas.iter().any(|&i| v[i] != v[lambdas[0]]))
}

#[cfg(test)]
mod tests {
    use super::super::{build_system, BlockPattern};
    use super::*;
    use crate::manifolds::{Case, GluingMatrix};

    #[test]
    fn forms_and_variables() {
        let b = GluingMatrix::new(Case::Edge, 1, 3, 0, 1).unwrap();
        let s = build_system(&b, &BlockPattern::parse(Case::Edge, "1").unwrap()).unwrap();
        assert_eq!(forced_variables(&s).unwrap(), vec![Var::Mu(0, 0)]);
        // l1 - lp1 = -3*m1_1 is forced; l1 alone is not
        let forms = [LinearForm(vec![1, -1, 0]), LinearForm(vec![1, 0, 0])];
        assert_eq!(forced_forms(&s, &forms).unwrap(), vec![true, false]);
    }
}
