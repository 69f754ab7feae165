//! Simultaneous block triangularization of a commuting triple `(P, P', Q)`.
//!
//! The ambient space splits into the generalized eigenspaces of `P`, each of
//! which splits further by those of `P'`. Inside each piece the three
//! restrictions commute and are put in upper triangular form by repeatedly
//! extracting a common eigenvector and passing to the quotient.

use super::charpoly::{char_poly, generalized_kernel_operator};
use super::{FieldMatrix, LinalgError, Matrix};
use crate::arith::{roots_in_field, CycloNumber, Field, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct BlockLayout {
    pub row_eigenvalues: Vec<CycloNumber>,
    pub col_eigenvalues: Vec<CycloNumber>,
    /// `dims[r][s]` is the dimension of the joint generalized eigenspace of
    /// `P` at `row_eigenvalues[r]` and `P'` at `col_eigenvalues[s]`.
    pub dims: Vec<Vec<usize>>,
    pub conjugator: FieldMatrix,
}

impl BlockLayout {
    /// `(r, s, offset, size)` for every cell in lexicographic order, including empty ones.
    pub fn cells(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        let mut offset = 0;
        for (r, row) in self.dims.iter().enumerate() {
            for (s, &d) in row.iter().enumerate() {
                out.push((r, s, offset, d));
                offset += d;
            }
        }
        out
    }

    pub fn total_dimension(&self) -> usize {
        self.dims.iter().flatten().sum()
    }

    /// The `(r, s)` diagonal block of a matrix already in this layout.
    pub fn block(&self, m: &FieldMatrix, r: usize, s: usize) -> FieldMatrix {
        let (_, _, offset, size) = self.cells().into_iter().find(|c| c.0 == r && c.1 == s).expect("cell in range");
        m.submatrix(offset..offset + size, offset..offset + size)
    }
}

#[derive(Clone, Debug)]
pub struct Triangularized {
    pub layout: BlockLayout,
    /// `C P C⁻¹`, `C P' C⁻¹`, `C Q C⁻¹`.
    pub p: FieldMatrix,
    pub p_prime: FieldMatrix,
    pub q: FieldMatrix,
}

/// See [`simultaneous_block_triangularize_with`]; eigenvalues of `Q` are
/// searched with [`roots_in_field`] block by block.
pub fn simultaneous_block_triangularize(
    p: &FieldMatrix,
    p_prime: &FieldMatrix,
    q: &FieldMatrix,
    eigs_p: &[CycloNumber],
    eigs_p_prime: &[CycloNumber],
) -> Result<Triangularized, LinalgError> {
    simultaneous_block_triangularize_with(p, p_prime, q, eigs_p, eigs_p_prime, None)
}

/// Finds `C` with `CPC⁻¹`, `CP'C⁻¹`, `CQC⁻¹` simultaneously block diagonal in
/// the lexicographic `(r, s)` grid, every block upper triangular, block
/// `(r, s)` of `CPC⁻¹` having sole eigenvalue `eigs_p[r]` and of `CP'C⁻¹` sole
/// eigenvalue `eigs_p_prime[s]`.
///
/// `q_eigs`, when given, lists candidate eigenvalues of `Q`; otherwise they are
/// searched among rational multiples of roots of unity.
pub fn simultaneous_block_triangularize_with(
    p: &FieldMatrix,
    p_prime: &FieldMatrix,
    q: &FieldMatrix,
    eigs_p: &[CycloNumber],
    eigs_p_prime: &[CycloNumber],
    q_eigs: Option<&[CycloNumber]>,
) -> Result<Triangularized, LinalgError> {
    p.require_square()?;
    let n = p.rows();
    for m in [p_prime, q] {
        if m.rows() != n || m.cols() != n {
            return Err(LinalgError::DimensionMismatch { left: (n, n), right: (m.rows(), m.cols()) });
        }
    }
    for (name, a, b) in [("P, P'", p, p_prime), ("P, Q", p, q), ("P', Q", p_prime, q)] {
        if !a.commutes_with(b)? {
            return Err(LinalgError::NotCommuting(name));
        }
    }
    let row_ops = eigen_operators(p, eigs_p, "P")?;
    let col_ops = eigen_operators(p_prime, eigs_p_prime, "P'")?;

    let zero = p.zero_elem().clone();
    let mut dims = vec![vec![0; eigs_p_prime.len()]; eigs_p.len()];
    let mut columns: Vec<Vec<CycloNumber>> = Vec::with_capacity(n);
    for (r, (row_op, lambda)) in row_ops.iter().zip(eigs_p).enumerate() {
        for (s, (col_op, lambda_prime)) in col_ops.iter().zip(eigs_p_prime).enumerate() {
            let basis = row_op.vstack(col_op)?.kernel();
            dims[r][s] = basis.len();
            if basis.is_empty() {
                continue;
            }
            let b = Matrix::from_columns(&basis, n, zero.clone());
            let restrict = |a: &FieldMatrix| b.solve(&a.mul(&b)?);
            let (ap, app, aq) = (restrict(p)?, restrict(p_prime)?, restrict(q)?);
            let gammas = match q_eigs {
                Some(list) => list.to_vec(),
                None => roots_in_field(&char_poly(&aq)?)?,
            };
            let t = common_triangularizer(&[(&ap, lambda), (&app, lambda_prime)], &aq, &gammas)?;
            let bt = b.mul(&t)?;
            columns.extend((0..bt.cols()).map(|j| bt.column(j)));
        }
    }
    let basis_change = Matrix::from_columns(&columns, n, zero);
    let conjugator = basis_change.inverse()?;
    let conj = |a: &FieldMatrix| conjugator.mul(a)?.mul(&basis_change);
    Ok(Triangularized {
        p: conj(p)?,
        p_prime: conj(p_prime)?,
        q: conj(q)?,
        layout: BlockLayout {
            row_eigenvalues: eigs_p.to_vec(),
            col_eigenvalues: eigs_p_prime.to_vec(),
            dims,
            conjugator,
        },
    })
}

/// `(M − λ)^n` for every listed eigenvalue, after checking the list is
/// distinct, consists of eigenvalues, and accounts for the full dimension.
fn eigen_operators(
    m: &FieldMatrix,
    eigs: &[CycloNumber],
    name: &'static str,
) -> Result<Vec<FieldMatrix>, LinalgError> {
    for (i, a) in eigs.iter().enumerate() {
        if eigs[..i].contains(a) {
            return Err(LinalgError::DuplicateEigenvalue(a.to_string()));
        }
    }
    let mut total = 0;
    let mut ops = Vec::with_capacity(eigs.len());
    for lambda in eigs {
        let op = generalized_kernel_operator(m, lambda)?;
        let dim = m.rows() - op.rank();
        if dim == 0 {
            return Err(LinalgError::NotAnEigenvalue(lambda.to_string()));
        }
        total += dim;
        ops.push(op);
    }
    if total != m.rows() {
        return Err(LinalgError::IncompleteEigenvalues { matrix: name, found: total, expected: m.rows() });
    }
    Ok(ops)
}

/// `T` with `T⁻¹ A T` upper triangular for `A` each of the fixed-eigenvalue
/// matrices and for `q`. Common eigenvectors are taken with smallest leading
/// index, ties resolved by the order of `gammas`.
fn common_triangularizer<R: Field>(
    fixed: &[(&Matrix<R>, &R)],
    q: &Matrix<R>,
    gammas: &[R],
) -> Result<Matrix<R>, LinalgError> {
    let d = q.rows();
    let zero = q.zero_elem().clone();
    if d == 0 {
        return Ok(Matrix::identity(0, zero));
    }
    let shifted: Vec<Matrix<R>> = fixed.iter().map(|(a, l)| a.shift(l)).collect::<Result<_, _>>()?;
    let stacked = shifted.iter().skip(1).try_fold(shifted[0].clone(), |acc, m| acc.vstack(m))?;
    let mut best: Option<Vec<R>> = None;
    for gamma in gammas {
        let kernel = stacked.vstack(&q.shift(gamma)?)?.kernel();
        if kernel.is_empty() {
            continue;
        }
        let reduced = Matrix::from_rows(kernel, zero.clone())?.rref().matrix;
        let v = reduced.row(0).to_vec();
        if best.as_ref().map_or(true, |b| leading_index(&v) < leading_index(b)) {
            best = Some(v);
        }
    }
    let v = best.ok_or(LinalgError::EigenvaluesOutsideField)?;
    let lead = leading_index(&v);
    let one = zero.one_like();
    let mut columns = vec![v];
    for j in (0..d).filter(|&j| j != lead) {
        let mut e = vec![zero.clone(); d];
        e[j] = one.clone();
        columns.push(e);
    }
    let s = Matrix::from_columns(&columns, d, zero.clone());
    let s_inv = s.inverse()?;
    let quotient = |a: &Matrix<R>| -> Result<Matrix<R>, LinalgError> {
        Ok(s_inv.mul(a)?.mul(&s)?.submatrix(1..d, 1..d))
    };
    let fixed_q: Vec<Matrix<R>> = fixed.iter().map(|(a, _)| quotient(a)).collect::<Result<_, _>>()?;
    let fixed_refs: Vec<(&Matrix<R>, &R)> = fixed_q.iter().zip(fixed).map(|(a, (_, l))| (a, *l)).collect();
    let inner = common_triangularizer(&fixed_refs, &quotient(q)?, gammas)?;
    let mut lifted = Matrix::identity(d, zero);
    for i in 1..d {
        for j in 1..d {
            lifted.set(i, j, inner.get(i - 1, j - 1).clone());
        }
    }
    s.mul(&lifted)
}

fn leading_index<R: Ring>(v: &[R]) -> usize {
    v.iter().position(|x| !x.is_zero_elem()).unwrap_or(v.len())
}

/// Whether every entry strictly below the diagonal is zero.
pub fn is_upper_triangular<R: Ring>(m: &Matrix<R>) -> bool {
    (0..m.rows()).all(|i| (0..i.min(m.cols())).all(|j| m.get(i, j).is_zero_elem()))
}

/// Whether `m` is block diagonal in `layout`'s grid with each block upper
/// triangular.
pub fn is_block_upper_triangular(m: &FieldMatrix, layout: &BlockLayout) -> bool {
    if !is_upper_triangular(m) {
        return false;
    }
    let n = m.rows();
    let mut block_of = vec![0; n];
    for (idx, (_, _, offset, size)) in layout.cells().into_iter().enumerate() {
        for slot in &mut block_of[offset..offset + size] {
            *slot = idx;
        }
    }
    (0..n).all(|i| (0..n).all(|j| block_of[i] == block_of[j] || m.get(i, j).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::CycloField;

    fn q_diag(vals: &[i64]) -> FieldMatrix {
        let k = CycloField::rationals();
        let d: Vec<CycloNumber> = vals.iter().map(|&v| CycloNumber::from_int(&k, v)).collect();
        Matrix::diagonal(&d, CycloNumber::zero(&k))
    }

    fn nums(vals: &[i64]) -> Vec<CycloNumber> {
        let k = CycloField::rationals();
        vals.iter().map(|&v| CycloNumber::from_int(&k, v)).collect()
    }

    #[test]
    fn identity_triple() {
        let id = q_diag(&[1, 1, 1]);
        let t = simultaneous_block_triangularize(&id, &id, &id, &nums(&[1]), &nums(&[1])).unwrap();
        assert!(t.layout.conjugator.is_identity());
        assert_eq!(t.layout.dims, vec![vec![3]]);
    }

    #[test]
    fn diagonal_grid() {
        let p = q_diag(&[1, 1, 2]);
        let pp = q_diag(&[3, 4, 4]);
        let id = q_diag(&[1, 1, 1]);
        let t = simultaneous_block_triangularize(&p, &pp, &id, &nums(&[1, 2]), &nums(&[3, 4])).unwrap();
        assert_eq!(t.layout.dims, vec![vec![1, 1], vec![0, 1]]);

        let k = CycloField::rationals();
        let c0 = Matrix::from_rows(
            vec![nums(&[1, 2, 0]), nums(&[0, 1, 3]), nums(&[1, 0, 1])],
            CycloNumber::zero(&k),
        )
        .unwrap();
        let conj = |m: &FieldMatrix| m.conjugate_by(&c0).unwrap();
        let t2 =
            simultaneous_block_triangularize(&conj(&p), &conj(&pp), &conj(&id), &nums(&[1, 2]), &nums(&[3, 4]))
                .unwrap();
        assert_eq!(t2.layout.dims, t.layout.dims);
        assert!(is_block_upper_triangular(&t2.p, &t2.layout));
    }

    #[test]
    fn jordan_block_is_triangularized() {
        let k = CycloField::rationals();
        let z = CycloNumber::zero(&k);
        // conjugate of a Jordan block; P' is a polynomial in P
        let p = Matrix::from_rows(vec![nums(&[3, -1]), nums(&[4, -1])], z.clone()).unwrap();
        let pp = p.mul(&p).unwrap();
        let t = simultaneous_block_triangularize(&p, &pp, &p, &nums(&[1]), &nums(&[1])).unwrap();
        assert!(is_upper_triangular(&t.p));
        assert_eq!(t.p.get(0, 0), &CycloNumber::one(&k));
        let c = &t.layout.conjugator;
        assert_eq!(c.mul(&p).unwrap(), t.p.mul(c).unwrap());
    }

    #[test]
    fn errors() {
        let p = q_diag(&[1, 2]);
        let n = Matrix::from_rows(vec![nums(&[0, 1]), nums(&[1, 0])], p.zero_elem().clone()).unwrap();
        assert!(matches!(
            simultaneous_block_triangularize(&p, &n, &p, &nums(&[1, 2]), &nums(&[1, -1])),
            Err(LinalgError::NotCommuting(_))
        ));
        assert!(matches!(
            simultaneous_block_triangularize(&p, &p, &p, &nums(&[1]), &nums(&[1, 2])),
            Err(LinalgError::IncompleteEigenvalues { .. })
        ));
        assert!(matches!(
            simultaneous_block_triangularize(&p, &p, &p, &nums(&[1, 2, 3]), &nums(&[1, 2])),
            Err(LinalgError::NotAnEigenvalue(_))
        ));
    }
}
