use num_integer::Integer;
use serde_json::json;

use super::{RepError, Representation};
use crate::arith::{
    format_rational, galois_norm, is_cyclotomic_product, kronecker_oracle, CycloPolynomial, RatPolynomial,
};
use crate::linalg::{char_poly, FieldMatrix};
use crate::manifolds::Word;

/// Whether a matrix has only roots of unity as eigenvalues, with evidence.
#[derive(Clone, Debug, PartialEq)]
pub struct VUReport {
    pub word: Option<Word>,
    pub char_poly: CycloPolynomial,
    /// `N(χ)`, the product of the Galois conjugates of the characteristic polynomial.
    pub norm_poly: RatPolynomial,
    /// Orders `m` with `N(χ) = ∏ Φ_m`, ascending, when it factors that way.
    pub cyclotomic_multiset: Option<Vec<u64>>,
    pub verdict: bool,
    /// `lcm` of the multiset: the image to this power is unipotent.
    pub witness_order: Option<u64>,
    /// Kronecker's test on the integral norm; `None` when the norm is not integral.
    pub kronecker: Option<bool>,
}

impl VUReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "word": self.word.as_ref().map(ToString::to_string),
            "char_poly": self.char_poly.to_string(),
            "norm_poly": self.norm_poly.coeffs().iter().map(format_rational).collect::<Vec<_>>(),
            "cyclotomic_multiset": self.cyclotomic_multiset,
            "verdict": self.verdict,
            "witness_order": self.witness_order,
        })
    }
}

/// The characteristic polynomial is monic, so its norm is monic; when the
/// norm also has integer coefficients it is tested by cyclotomic peeling and
/// by Kronecker's criterion, which must agree. A norm with a non-integral
/// coefficient has a root that is not an algebraic integer, so the verdict is
/// false.
pub fn is_vu_matrix(p: &FieldMatrix) -> Result<VUReport, RepError> {
    p.require_square()?;
    if !p.is_invertible() {
        return Err(RepError::SingularMatrix);
    }
    let chi = char_poly(p)?;
    let norm = galois_norm(&chi)?;
    let (multiset, kronecker) = match norm.to_integer() {
        Some(integral) => {
            let peeled = is_cyclotomic_product(&integral)?;
            let kron = kronecker_oracle(&integral)?;
            if peeled.is_some() != kron {
                return Err(RepError::OracleDisagreement(integral.to_string()));
            }
            (peeled, Some(kron))
        }
        None => (None, None),
    };
    let witness_order = multiset.as_ref().map(|m| m.iter().fold(1u64, |acc, &d| acc.lcm(&d)));
    Ok(VUReport {
        word: None,
        char_poly: chi,
        norm_poly: norm,
        verdict: multiset.is_some(),
        cyclotomic_multiset: multiset,
        witness_order,
        kronecker,
    })
}

pub fn analyze_word(rho: &Representation, w: &Word) -> Result<VUReport, RepError> {
    if let Some(s) = w.symbols().find(|s| rho.image(s).is_err()) {
        return Err(RepError::UnknownGenerator(s.to_string()));
    }
    let mut report = is_vu_matrix(&rho.evaluate(w)?)?;
    report.word = Some(w.clone());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, CycloField, CycloNumber};

    #[test]
    fn identity_and_scalar() {
        let q = CycloField::rationals();
        let id = FieldMatrix::identity(3, CycloNumber::zero(&q));
        let r = is_vu_matrix(&id).unwrap();
        assert!(r.verdict);
        assert_eq!(r.witness_order, Some(1));
        assert_eq!(r.cyclotomic_multiset, Some(vec![1, 1, 1]));
        let two = FieldMatrix::diagonal(&[CycloNumber::from_int(&q, 2)], CycloNumber::zero(&q));
        let r = is_vu_matrix(&two).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.witness_order, None);
        assert_eq!(r.kronecker, Some(false));
    }

    #[test]
    fn sixth_roots() {
        let f = CycloField::new(6).unwrap();
        let z = CycloNumber::zeta(&f);
        let m = FieldMatrix::diagonal(&[z.clone(), z.pow(5).unwrap()], CycloNumber::zero(&f));
        let r = is_vu_matrix(&m).unwrap();
        assert!(r.verdict);
        assert_eq!(r.cyclotomic_multiset, Some(vec![6, 6]));
        assert_eq!(r.witness_order, Some(6));
    }

    #[test]
    fn non_integral_norm_is_rejected() {
        let q = CycloField::rationals();
        let half = FieldMatrix::diagonal(&[CycloNumber::from_rational(&q, int(1) / int(2))], CycloNumber::zero(&q));
        let r = is_vu_matrix(&half).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.kronecker, None);
    }

    #[test]
    fn singular_input() {
        let q = CycloField::rationals();
        let z = FieldMatrix::zeros(2, 2, CycloNumber::zero(&q));
        assert!(matches!(is_vu_matrix(&z), Err(RepError::SingularMatrix)));
    }
}
