use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Commutative ring element usable as a polynomial coefficient or matrix entry.
///
/// Elements may carry context (the cyclotomic field they live in), so the
/// additive and multiplicative identities are produced from an existing
/// element rather than from a free-standing constructor.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: i64) -> Self;

    fn is_one_elem(&self) -> bool {
        *self == self.one_like()
    }

    /// Used only for pretty-printing signs.
    fn is_negative_elem(&self) -> bool {
        false
    }

    /// Whether the printed form needs parentheses inside a product.
    fn needs_parens(&self) -> bool {
        false
    }
}

pub trait Field: Ring {
    fn inv_ref(&self) -> Option<Self>;

    fn div_ref(&self, other: &Self) -> Option<Self> {
        other.inv_ref().map(|inv| self.mul_ref(&inv))
    }
}

impl Ring for BigInt {
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
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn from_int_like(&self, n: i64) -> Self {
        BigInt::from(n)
    }
    fn is_one_elem(&self) -> bool {
        self.is_one()
    }
    fn is_negative_elem(&self) -> bool {
        self.is_negative()
    }
}

impl Ring for BigRational {
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
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn from_int_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_one_elem(&self) -> bool {
        self.is_one()
    }
    fn is_negative_elem(&self) -> bool {
        self.is_negative()
    }
}

impl Field for BigRational {
    fn inv_ref(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}
