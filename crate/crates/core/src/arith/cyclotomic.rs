//! Cyclotomic polynomials and the two independent root-of-unity tests.
//!
//! [`is_cyclotomic_product`] peels cyclotomic factors off a monic integer
//! polynomial; [`kronecker_oracle`] decides the same property without ever
//! forming a cyclotomic polynomial, by checking that the squarefree part
//! divides `x^L − 1`.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cyclo::{roots_of_unity, CycloField, CycloNumber};
use super::poly::{IntPolynomial, Polynomial, RatPolynomial};
use super::ring::Ring;
use super::ArithError;

pub type CycloPolynomial = Polynomial<CycloNumber>;

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn cyclotomic_cached(m: u64, cache: &mut HashMap<u64, IntPolynomial>) -> IntPolynomial {
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    let mut product = IntPolynomial::one_with(BigInt::zero());
    for d in divisors(m) {
        if d < m {
            product = product.mul(&cyclotomic_cached(d, cache));
        }
    }
    let (quot, rem) = IntPolynomial::x_pow_minus_one(m as usize).div_rem_monic(&product);
    debug_assert!(rem.is_zero());
    cache.insert(m, quot.clone());
    quot
}

/// The m-th cyclotomic polynomial Φ_m, by exact division of `x^m − 1` by the
/// product of Φ_d over the proper divisors `d` of `m`.
///
/// # Panics
/// If `m == 0`.
pub fn cyclotomic_poly(m: u64) -> IntPolynomial {
    assert!(m >= 1, "cyclotomic_poly requires m >= 1");
    cyclotomic_cached(m, &mut HashMap::new())
}

fn check_root_test_input(p: &IntPolynomial) -> Result<usize, ArithError> {
    if !p.is_monic() {
        return Err(ArithError::NotMonic);
    }
    if p.coeff(0).is_zero() {
        return Err(ArithError::ZeroConstantTerm);
    }
    Ok(p.degree().expect("monic polynomials are nonzero"))
}

/// Every `d` with φ(d) ≤ `degree`. Uses φ(d) ≥ √(d/2), so `d ≤ 2·degree²`.
pub fn candidate_orders(degree: usize) -> Vec<u64> {
    let bound = (2 * degree * degree).max(2) as u64;
    (1..=bound).filter(|&d| euler_phi(d) <= degree as u64).collect()
}

/// The multiset `{d_i}` with `p = ∏ Φ_{d_i}`, or `None` if no such factorization exists.
///
/// Returned in ascending order.
pub fn is_cyclotomic_product(p: &IntPolynomial) -> Result<Option<Vec<u64>>, ArithError> {
    let degree = check_root_test_input(p)?;
    let mut cache = HashMap::new();
    let mut rest = p.clone();
    let mut found = Vec::new();
    for d in candidate_orders(degree) {
        let phi = cyclotomic_cached(d, &mut cache);
        loop {
            if rest.degree() < phi.degree() {
                break;
            }
            let (q, r) = rest.div_rem_monic(&phi);
            if !r.is_zero() {
                break;
            }
            rest = q;
            found.push(d);
        }
    }
    Ok(rest.is_one().then_some(found))
}

/// Least common multiple of all orders a root of unity of degree at most `degree` can have.
pub fn kronecker_exponent(degree: usize) -> BigInt {
    candidate_orders(degree)
        .into_iter()
        .fold(BigInt::one(), |acc, d| acc.lcm(&BigInt::from(d)))
}

/// Upper bound on the coefficients of `x^k mod s` for every `k`, valid whenever
/// all roots of the squarefree monic integer polynomial `s` lie on the unit circle.
///
/// Lagrange interpolation writes `x^k mod s = Σ α_i^k ℓ_i(x)`; numerators of
/// `ℓ_i` have coefficients at most `2^{n−1}` and denominators are bounded below
/// by Mahler's root separation `√3·n^{−(n+2)/2}`.
fn unit_circle_power_bound(n: usize) -> BigInt {
    let n_big = BigInt::from(n);
    let sep_inv = n_big.pow(((n + 3) / 2) as u32);
    n_big * BigInt::from(2).pow(n.saturating_sub(1) as u32) * sep_inv.pow(n.saturating_sub(1) as u32)
}

/// Decides whether every root of `p` is a root of unity, independently of the
/// cyclotomic peeling: with `L = lcm{d : φ(d) ≤ deg p}`, the answer is yes iff
/// the squarefree part of `p` divides `x^L − 1`.
///
/// `x^L mod s` is computed by square-and-multiply. If some intermediate
/// coefficient exceeds the bound that holds when all roots are on the unit
/// circle, the answer is no and the computation stops early.
pub fn kronecker_oracle(p: &IntPolynomial) -> Result<bool, ArithError> {
    let degree = check_root_test_input(p)?;
    let s = p
        .to_rational()
        .squarefree_part()
        .to_integer()
        .expect("squarefree part of a monic integer polynomial is integral");
    let n = s.degree().expect("nonzero");
    if n == 0 {
        return Ok(true);
    }
    let exponent = kronecker_exponent(degree);
    let bound = unit_circle_power_bound(n);
    let x = IntPolynomial::x_with(BigInt::zero()).rem_monic(&s);
    let mut acc = IntPolynomial::one_with(BigInt::zero());
    for bit in (0..exponent.bits()).rev() {
        acc = acc.mul(&acc).rem_monic(&s);
        if exponent.bit(bit) {
            acc = acc.mul(&x).rem_monic(&s);
        }
        if acc.max_abs_coeff() > bound {
            return Ok(false);
        }
    }
    Ok(acc.is_one())
}

/// `N(p) = ∏_σ σ(p)` over `Gal(Q(ζ_m)/Q)`; the result has rational coefficients
/// and contains every root of `p`.
pub fn galois_norm(p: &CycloPolynomial) -> Result<RatPolynomial, ArithError> {
    if !p.is_monic() {
        return Err(ArithError::NotMonic);
    }
    let field = p.zero_elem().field().clone();
    let mut product = CycloPolynomial::one_with(p.zero_elem().clone());
    for j in field.galois_exponents() {
        let conj = Polynomial::new(
            p.coeffs()
                .iter()
                .map(|c| c.galois_apply(j as i64))
                .collect::<Result<Vec<_>, _>>()?,
            p.zero_elem().clone(),
        );
        product = product.mul(&conj);
    }
    let coeffs = product
        .coeffs()
        .iter()
        .map(|c| c.as_rational().cloned().ok_or(ArithError::NormNotRational))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RatPolynomial::new(coeffs, BigRational::zero()))
}

/// Embeds a rational polynomial into `Q(ζ_m)[x]`.
pub fn lift_to_field(p: &RatPolynomial, field: &Arc<CycloField>) -> CycloPolynomial {
    p.map(CycloNumber::zero(field), |c| CycloNumber::from_rational(field, c.clone()))
}

const DIVISOR_SEARCH_LIMIT: u64 = 1 << 40;

fn positive_divisors(n: &BigInt) -> Result<Vec<u64>, ArithError> {
    let n = n.abs().to_u64().filter(|&v| v <= DIVISOR_SEARCH_LIMIT).ok_or(ArithError::SearchTooLarge)?;
    Ok(divisors(n))
}

/// Distinct rational roots, ascending, via the rational root theorem.
pub fn rational_roots(p: &RatPolynomial) -> Result<Vec<BigRational>, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let s = p.squarefree_part();
    let denominators = s.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = s
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(denominators.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    let shift = ints.iter().position(|c| !c.is_zero()).expect("nonzero polynomial");
    if shift > 0 {
        roots.push(BigRational::zero());
    }
    let ints = &ints[shift..];
    if ints.len() > 1 {
        let q = IntPolynomial::new(ints.to_vec(), BigInt::zero()).to_rational();
        let numerators = positive_divisors(&ints[0])?;
        let denoms = positive_divisors(ints.last().expect("nonempty"))?;
        for &num in &numerators {
            for &den in &denoms {
                if num.gcd(&den) != 1 {
                    continue;
                }
                for sign in [1i64, -1] {
                    let r = BigRational::new(BigInt::from(num) * sign, BigInt::from(den));
                    if q.eval(&r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Common rational roots of `p ∈ Q(ζ_m)[x]`: the roots shared by every
/// power-basis component polynomial.
fn rational_roots_in_field(p: &CycloPolynomial) -> Result<Vec<BigRational>, ArithError> {
    let degree = p.zero_elem().field().degree();
    let mut g: Option<RatPolynomial> = None;
    for t in 0..degree {
        let component = RatPolynomial::new(
            p.coeffs().iter().map(|c| c.coeffs()[t].clone()).collect(),
            BigRational::zero(),
        );
        if component.is_zero() {
            continue;
        }
        g = Some(match g {
            None => component,
            Some(prev) => prev.gcd(&component),
        });
    }
    match g {
        None => Err(ArithError::ZeroPolynomial),
        Some(g) if g.degree() == Some(0) => Ok(Vec::new()),
        Some(g) => rational_roots(&g),
    }
}

/// Roots of `p` in its field of the form `q·ω` with `q` rational and `ω` a root
/// of unity of the field.
///
/// This is a convenience search, not general root finding: roots of any other
/// shape are not reported. Order: by root of unity (powers of the generator),
/// then by ascending `q > 0` (negative `q` is covered by `−ω`).
pub fn roots_in_field(p: &CycloPolynomial) -> Result<Vec<CycloNumber>, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let field = p.zero_elem().field().clone();
    let mut out: Vec<CycloNumber> = Vec::new();
    if p.coeff(0).is_zero() {
        out.push(CycloNumber::zero(&field));
    }
    for omega in roots_of_unity(&field) {
        for q in rational_roots_in_field(&p.scale_variable(&omega))? {
            if !q.is_positive() {
                continue;
            }
            let root = omega.scale(&q);
            if !out.contains(&root) {
                out.push(root);
            }
        }
    }
    debug_assert!(out.iter().all(|r| p.eval(r).is_zero_elem()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), ip(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), ip(&[1, 1]));
        assert_eq!(cyclotomic_poly(12), ip(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_poly(5), ip(&[1, 1, 1, 1, 1]));
    }

    /// Φ_12 via the definition: divide x^12 − 1 by Φ_1Φ_2Φ_3Φ_4Φ_6, each
    /// computed by the same division at lower order.
    #[test]
    fn phi12_by_independent_recursion() {
        fn phi(m: usize) -> IntPolynomial {
            let mut prod = ip(&[1]);
            for d in 1..m {
                if m % d == 0 {
                    prod = prod.mul(&phi(d));
                }
            }
            let (q, r) = IntPolynomial::x_pow_minus_one(m).div_rem_monic(&prod);
            assert!(r.is_zero());
            q
        }
        assert_eq!(phi(12), ip(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_poly(12), phi(12));
    }

    #[test]
    fn totients() {
        let expected = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(euler_phi(i as u64 + 1), e);
        }
    }

    #[test]
    fn peeling_examples() {
        assert_eq!(is_cyclotomic_product(&ip(&[-1, 3, -3, 1])).unwrap(), Some(vec![1, 1, 1]));
        assert_eq!(is_cyclotomic_product(&ip(&[-1, -1, 1])).unwrap(), None);
        assert_eq!(is_cyclotomic_product(&ip(&[1, 1, 1, 1, 1])).unwrap(), Some(vec![5]));
        assert_eq!(is_cyclotomic_product(&ip(&[1])).unwrap(), Some(vec![]));
    }

    #[test]
    fn root_tests_reject_bad_input() {
        assert!(matches!(is_cyclotomic_product(&ip(&[1, 2])), Err(ArithError::NotMonic)));
        assert!(matches!(is_cyclotomic_product(&ip(&[0, 1])), Err(ArithError::ZeroConstantTerm)));
        assert!(matches!(kronecker_oracle(&ip(&[0, 0, 1])), Err(ArithError::ZeroConstantTerm)));
        assert!(matches!(kronecker_oracle(&ip(&[])), Err(ArithError::NotMonic)));
    }

    #[test]
    fn kronecker_examples() {
        assert!(kronecker_oracle(&ip(&[-1, 1])).unwrap());
        assert!(!kronecker_oracle(&ip(&[-2, 1])).unwrap());
        assert!(!kronecker_oracle(&ip(&[-1, -1, 1])).unwrap());
        assert!(kronecker_oracle(&ip(&[1, 0, -1, 0, 1])).unwrap());
        // (x − 1)²(x² + x + 1): repeated factor handled through the squarefree part
        assert!(kronecker_oracle(&ip(&[-1, 3, -3, 1]).mul(&ip(&[1, 1, 1]))).unwrap());
    }

    #[test]
    fn gcd_with_x_l_minus_one_is_trivial_for_golden_ratio() {
        let l = kronecker_exponent(2).to_usize().unwrap();
        assert_eq!(l, 12);
        let g = ip(&[-1, -1, 1]).to_rational().gcd(&IntPolynomial::x_pow_minus_one(l).to_rational());
        assert!(g.is_one());
    }

    #[test]
    fn norm_examples() {
        let k4 = CycloField::new(4).unwrap();
        let p = CycloPolynomial::linear_factor(&CycloNumber::zeta(&k4));
        assert_eq!(galois_norm(&p).unwrap(), ip(&[1, 0, 1]).to_rational());

        let k3 = CycloField::new(3).unwrap();
        let one = CycloPolynomial::linear_factor(&CycloNumber::one(&k3));
        assert_eq!(galois_norm(&one).unwrap(), ip(&[1, -2, 1]).to_rational());
        let two = CycloPolynomial::linear_factor(&CycloNumber::from_int(&k3, 2));
        assert_eq!(galois_norm(&two).unwrap(), ip(&[4, -4, 1]).to_rational());

        let scaled = CycloPolynomial::constant(CycloNumber::from_int(&k3, 2));
        assert!(matches!(galois_norm(&scaled), Err(ArithError::NotMonic)));
    }

    #[test]
    fn rational_root_search() {
        // (2x − 1)(x + 3)(x² + 1)
        let p = ip(&[-1, 2]).mul(&ip(&[3, 1])).mul(&ip(&[1, 0, 1])).to_rational();
        let roots = rational_roots(&p).unwrap();
        assert_eq!(roots, vec![BigRational::from_integer((-3).into()), BigRational::new(1.into(), 2.into())]);
    }

    #[test]
    fn field_root_search_finds_scaled_roots_of_unity() {
        let k = CycloField::new(3).unwrap();
        let z = CycloNumber::zeta(&k);
        let a = z.scale(&BigRational::from_integer(2.into()));
        let b = CycloNumber::from_int(&k, -1);
        let p = CycloPolynomial::linear_factor(&a).mul(&CycloPolynomial::linear_factor(&b));
        let roots = roots_in_field(&p).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&a) && roots.contains(&b));
    }
}
