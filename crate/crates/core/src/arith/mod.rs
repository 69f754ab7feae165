//! Exact arithmetic: rationals, polynomials, cyclotomic fields.

mod cyclo;
mod cyclotomic;
mod poly;
mod rational;
mod ring;

pub use cyclo::{roots_of_unity, CycloField, CycloNumber};
pub use cyclotomic::{
    candidate_orders, cyclotomic_poly, euler_phi, galois_norm, is_cyclotomic_product,
    kronecker_exponent, kronecker_oracle, lift_to_field, rational_roots, roots_in_field,
    CycloPolynomial,
};
pub use poly::{IntPolynomial, Polynomial, RatPolynomial};
pub use rational::{format_rational, int, parse_rational, rational};
pub use ring::{Field, Ring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("invalid conductor {0}")]
    InvalidConductor(u64),
    #[error("expected {expected} coefficients, found {found}")]
    CoefficientLength { expected: usize, found: usize },
    #[error("field mismatch: Q(zeta_{0}) vs Q(zeta_{1})")]
    FieldMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{exponent} is not coprime to conductor {conductor}")]
    NotAGaloisExponent { exponent: i64, conductor: u64 },
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("Galois norm has non-rational coefficients")]
    NormNotRational,
    #[error("search space too large")]
    SearchTooLarge,
}
