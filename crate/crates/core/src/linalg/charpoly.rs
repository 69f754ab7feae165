use super::{LinalgError, Matrix};
use crate::arith::{Field, Polynomial, Ring};

/// `det(xI − M)` by Berkowitz's division-free algorithm.
pub fn char_poly<R: Ring>(m: &Matrix<R>) -> Result<Polynomial<R>, LinalgError> {
    m.require_square()?;
    let n = m.rows();
    let zero = m.zero_elem().clone();
    let one = zero.one_like();
    if n == 0 {
        return Ok(Polynomial::one_with(zero));
    }
    // coefficients highest degree first
    let mut vect = vec![one.clone(), m.get(0, 0).neg_ref()];
    for r in 1..n {
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(one.clone());
        toeplitz.push(m.get(r, r).neg_ref());
        let mut v: Vec<R> = (0..r).map(|i| m.get(i, r).clone()).collect();
        for _ in 0..r {
            let dot = (0..r).fold(zero.clone(), |acc, j| acc.add_ref(&m.get(r, j).mul_ref(&v[j])));
            toeplitz.push(dot.neg_ref());
            v = (0..r)
                .map(|i| (0..r).fold(zero.clone(), |acc, j| acc.add_ref(&m.get(i, j).mul_ref(&v[j]))))
                .collect();
        }
        vect = (0..r + 2)
            .map(|i| {
                (0..=i.min(r)).fold(zero.clone(), |acc, j| acc.add_ref(&toeplitz[i - j].mul_ref(&vect[j])))
            })
            .collect();
    }
    vect.reverse();
    Ok(Polynomial::new(vect, zero))
}

/// `p(M)` by Horner's rule.
pub fn eval_poly_at_matrix<R: Ring>(p: &Polynomial<R>, m: &Matrix<R>) -> Result<Matrix<R>, LinalgError> {
    m.require_square()?;
    let zero = m.zero_elem().clone();
    let n = m.rows();
    let mut acc = Matrix::zeros(n, n, zero.clone());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(m)?.add(&Matrix::identity(n, zero.clone()).scale(c))?;
    }
    Ok(acc)
}

/// Basis of `ker((M − λI)^n)`; empty iff `λ` is not an eigenvalue.
pub fn generalized_eigenspace<R: Field>(m: &Matrix<R>, lambda: &R) -> Result<Vec<Vec<R>>, LinalgError> {
    Ok(generalized_kernel_operator(m, lambda)?.kernel())
}

pub(crate) fn generalized_kernel_operator<R: Field>(m: &Matrix<R>, lambda: &R) -> Result<Matrix<R>, LinalgError> {
    m.shift(lambda)?.pow(m.rows() as u32)
}
