use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::{cyclotomic_poly, euler_phi};
use super::poly::IntPolynomial;
use super::rational::format_rational;
use super::ring::{Field, Ring};
use super::ArithError;

/// The cyclotomic field Q(ζ_m), presented as Q[x] / Φ_m(x).
///
/// Conductor 1 (and 2) gives the rationals.
pub struct CycloField {
    conductor: u64,
    modulus: IntPolynomial,
    degree: usize,
    /// `ζ^e` reduced modulo Φ_m, for `e` up to `max(m, 2·deg − 1)`.
    powers: Vec<Vec<BigRational>>,
}

impl CycloField {
    pub fn new(conductor: u64) -> Result<Arc<Self>, ArithError> {
        if conductor == 0 {
            return Err(ArithError::InvalidConductor(conductor));
        }
        let modulus = cyclotomic_poly(conductor);
        let degree = modulus.degree().expect("cyclotomic polynomials are nonzero");
        debug_assert_eq!(degree as u64, euler_phi(conductor));
        let len = (conductor as usize).max(2 * degree);
        let zero = BigInt::zero();
        let x = IntPolynomial::x_with(zero.clone());
        let mut current = IntPolynomial::one_with(zero);
        let mut powers = Vec::with_capacity(len);
        for _ in 0..len {
            let row = (0..degree)
                .map(|i| BigRational::from_integer(current.coeff(i)))
                .collect();
            powers.push(row);
            current = current.mul(&x).rem_monic(&modulus);
        }
        Ok(Arc::new(CycloField { conductor, modulus, degree, powers }))
    }

    pub fn rationals() -> Arc<Self> {
        Self::new(1).expect("conductor 1 is valid")
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn modulus(&self) -> &IntPolynomial {
        &self.modulus
    }

    /// Euler totient of the conductor, the dimension over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Exponents `j` in `[1, m]` coprime to `m`; `σ_j: ζ ↦ ζ^j` runs over the Galois group.
    pub fn galois_exponents(&self) -> Vec<u64> {
        let m = self.conductor;
        (1..=m).filter(|j| j.gcd(&m) == 1).collect()
    }

    /// Order of the group of roots of unity contained in the field.
    pub fn roots_of_unity_order(&self) -> u64 {
        if self.conductor % 2 == 0 {
            self.conductor
        } else {
            2 * self.conductor
        }
    }
}

impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor
    }
}

impl Eq for CycloField {}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.conductor)
    }
}

/// An element of Q(ζ_m) in the power basis `1, ζ, …, ζ^{φ(m)−1}`.
#[derive(Clone)]
pub struct CycloNumber {
    field: Arc<CycloField>,
    coeffs: Vec<BigRational>,
}

impl CycloNumber {
    pub fn from_coeffs(field: &Arc<CycloField>, coeffs: Vec<BigRational>) -> Result<Self, ArithError> {
        if coeffs.len() != field.degree {
            return Err(ArithError::CoefficientLength {
                expected: field.degree,
                found: coeffs.len(),
            });
        }
        Ok(CycloNumber { field: field.clone(), coeffs })
    }

    pub fn zero(field: &Arc<CycloField>) -> Self {
        CycloNumber { field: field.clone(), coeffs: vec![BigRational::zero(); field.degree] }
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: &Arc<CycloField>, q: BigRational) -> Self {
        let mut out = Self::zero(field);
        out.coeffs[0] = q;
        out
    }

    pub fn from_int(field: &Arc<CycloField>, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    /// `ζ^e` for any integer `e` (negative exponents wrap modulo `m`).
    pub fn zeta_pow(field: &Arc<CycloField>, e: i64) -> Self {
        let m = field.conductor as i64;
        let e = e.rem_euclid(m) as usize;
        CycloNumber { field: field.clone(), coeffs: field.powers[e].clone() }
    }

    pub fn zeta(field: &Arc<CycloField>) -> Self {
        Self::zeta_pow(field, 1)
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    fn same_field(&self, other: &Self) -> Result<(), ArithError> {
        if self.field.conductor == other.field.conductor {
            Ok(())
        } else {
            Err(ArithError::FieldMismatch(self.field.conductor, other.field.conductor))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.same_field(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycloNumber { field: self.field.clone(), coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.same_field(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycloNumber { field: self.field.clone(), coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.same_field(other)?;
        let d = self.field.degree;
        if d == 1 {
            return Ok(CycloNumber {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let (low, high) = prod.split_at(d);
        let mut coeffs = low.to_vec();
        for (k, c) in high.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, p) in self.field.powers[d + k].iter().enumerate() {
                if !p.is_zero() {
                    coeffs[t] += c * p;
                }
            }
        }
        Ok(CycloNumber { field: self.field.clone(), coeffs })
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloNumber { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Multiplicative inverse, solving `a·x = 1` over Q in the power basis.
    pub fn inverse(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let d = self.field.degree;
        if d == 1 {
            return Ok(CycloNumber { field: self.field.clone(), coeffs: vec![self.coeffs[0].recip()] });
        }
        // column i holds a·ζ^i
        let columns: Vec<Vec<BigRational>> = (0..d)
            .map(|i| {
                let basis = CycloNumber { field: self.field.clone(), coeffs: self.field.powers[i].clone() };
                self.checked_mul(&basis).expect("same field").coeffs
            })
            .collect();
        let mut aug: Vec<Vec<BigRational>> = (0..d)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..d).map(|c| columns[c][r].clone()).collect();
                row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..d {
            let pivot = (col..d).find(|&r| !aug[r][col].is_zero()).ok_or(ArithError::DivisionByZero)?;
            aug.swap(col, pivot);
            let inv = aug[col][col].recip();
            for v in aug[col].iter_mut() {
                *v *= &inv;
            }
            for r in 0..d {
                if r != col && !aug[r][col].is_zero() {
                    let factor = aug[r][col].clone();
                    for c in col..=d {
                        let delta = &factor * &aug[col][c];
                        aug[r][c] -= delta;
                    }
                }
            }
        }
        let coeffs = aug.into_iter().map(|mut row| row.pop().expect("augmented column")).collect();
        Ok(CycloNumber { field: self.field.clone(), coeffs })
    }

    /// Applies `σ_j: ζ ↦ ζ^j`; requires `gcd(j, m) = 1`.
    pub fn galois_apply(&self, j: i64) -> Result<Self, ArithError> {
        let m = self.field.conductor as i64;
        let j = j.rem_euclid(m);
        if j.gcd(&m) != 1 && m != 1 {
            return Err(ArithError::NotAGaloisExponent { exponent: j, conductor: m as u64 });
        }
        let mut coeffs = vec![BigRational::zero(); self.field.degree];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = ((i as i64 * j).rem_euclid(m.max(1))) as usize;
            for (t, p) in self.field.powers[e].iter().enumerate() {
                if !p.is_zero() {
                    coeffs[t] += c * p;
                }
            }
        }
        Ok(CycloNumber { field: self.field.clone(), coeffs })
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self, ArithError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(&self.field);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Whether the element is one of the finitely many roots of unity in the field.
    pub fn is_root_of_unity(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let order = self.field.roots_of_unity_order() as i64;
        self.pow(order).map(|p| p.is_one()).unwrap_or(false)
    }
}

/// All roots of unity contained in the field, as powers of a generator of that group.
pub fn roots_of_unity(field: &Arc<CycloField>) -> Vec<CycloNumber> {
    let order = field.roots_of_unity_order();
    let generator = if field.conductor % 2 == 0 {
        CycloNumber::zeta(field)
    } else {
        -&CycloNumber::zeta(field)
    };
    let mut out = Vec::with_capacity(order as usize);
    let mut current = CycloNumber::one(field);
    for _ in 0..order {
        out.push(current.clone());
        current = &current * &generator;
    }
    out
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNumber {}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            match i {
                0 => write!(f, "{}", format_rational(&mag))?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", format_rational(&mag))?;
                    }
                    if i == 1 {
                        write!(f, "zeta")?;
                    } else {
                        write!(f, "zeta^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self, self.field.conductor)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CycloNumber> for &CycloNumber {
            type Output = CycloNumber;
            /// Panics when the operands live in different fields; use the `checked_` form to handle that.
            fn $method(self, rhs: &CycloNumber) -> CycloNumber {
                self.$checked(rhs).expect("operands in the same cyclotomic field")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Ring for CycloNumber {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        Self::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.field)
    }
    fn from_int_like(&self, n: i64) -> Self {
        Self::from_int(&self.field, n)
    }
    fn is_one_elem(&self) -> bool {
        self.is_one()
    }
    fn is_negative_elem(&self) -> bool {
        let mut nonzero = self.coeffs.iter().filter(|c| !c.is_zero());
        matches!((nonzero.next(), nonzero.next()), (Some(c), None) if c.is_negative())
    }
    fn needs_parens(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() > 1
    }
}

impl Field for CycloNumber {
    fn inv_ref(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rational};

    fn field(m: u64) -> Arc<CycloField> {
        CycloField::new(m).unwrap()
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let k = field(4);
        let z = CycloNumber::zeta(&k);
        assert_eq!(&z * &z, CycloNumber::from_int(&k, -1));
    }

    #[test]
    fn galois_three_on_zeta4() {
        let k = field(4);
        let z = CycloNumber::zeta(&k);
        assert_eq!(z.galois_apply(3).unwrap(), -&z);
        assert!(z.galois_apply(2).is_err());
    }

    #[test]
    fn inverse_of_one_plus_zeta3() {
        // (1 + ζ)(−ζ) = −ζ − ζ² = 1 since ζ² = −ζ − 1
        let k = field(3);
        let a = &CycloNumber::one(&k) + &CycloNumber::zeta(&k);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, -&CycloNumber::zeta(&k));
        assert!(CycloNumber::zero(&k).inverse().is_err());
    }

    #[test]
    fn mismatched_fields_are_errors() {
        let a = CycloNumber::one(&field(3));
        let b = CycloNumber::one(&field(4));
        assert!(matches!(a.checked_add(&b), Err(ArithError::FieldMismatch(3, 4))));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn coefficient_length_is_checked() {
        let k = field(4);
        let err = CycloNumber::from_coeffs(&k, vec![int(1), int(2), int(3)]).unwrap_err();
        assert!(matches!(err, ArithError::CoefficientLength { expected: 2, found: 3 }));
    }

    #[test]
    fn roots_of_unity_counts() {
        assert_eq!(roots_of_unity(&field(1)).len(), 2);
        assert_eq!(roots_of_unity(&field(3)).len(), 6);
        assert_eq!(roots_of_unity(&field(4)).len(), 4);
        assert_eq!(roots_of_unity(&field(12)).len(), 12);
        for w in roots_of_unity(&field(12)) {
            assert!(w.is_root_of_unity());
        }
        let k = field(12);
        assert!(!CycloNumber::from_int(&k, 2).is_root_of_unity());
        assert!(!(&CycloNumber::one(&k) + &CycloNumber::zeta(&k)).is_root_of_unity());
    }

    #[test]
    fn display_power_basis() {
        let k = field(5);
        let a = CycloNumber::from_coeffs(&k, vec![int(1), int(-1), rational(1, 2), int(0)]).unwrap();
        assert_eq!(a.to_string(), "1 - zeta + 1/2*zeta^2");
        assert_eq!(CycloNumber::zero(&k).to_string(), "0");
    }

    #[test]
    fn negative_powers() {
        let k = field(7);
        let z = CycloNumber::zeta(&k);
        assert_eq!(z.pow(-1).unwrap(), CycloNumber::zeta_pow(&k, 6));
        assert_eq!(z.pow(7).unwrap(), CycloNumber::one(&k));
    }
}
