use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::LinalgError;
use crate::arith::{CycloNumber, Field, Ring};

/// Dense row-major matrix over a ring.
///
/// The ring's zero is stored alongside the entries so that empty matrices
/// over a cyclotomic field still know their field.
#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    entries: Vec<R>,
    zero: R,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;
pub type FieldMatrix = Matrix<CycloNumber>;

impl<R: Ring> Matrix<R> {
    pub fn new(rows: usize, cols: usize, entries: Vec<R>, zero: R) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::EntryCount { expected: rows * cols, found: entries.len() });
        }
        Ok(Matrix { rows, cols, entries, zero })
    }

    /// Builds from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<R>>, zero: R) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::RaggedRows);
        }
        let n = rows.len();
        Matrix::new(n, cols, rows.into_iter().flatten().collect(), zero)
    }

    pub fn zeros(rows: usize, cols: usize, zero: R) -> Self {
        Matrix { rows, cols, entries: vec![zero.clone(); rows * cols], zero }
    }

    pub fn identity(n: usize, zero: R) -> Self {
        let mut m = Matrix::zeros(n, n, zero);
        let one = m.zero.one_like();
        for i in 0..n {
            m.set(i, i, one.clone());
        }
        m
    }

    pub fn diagonal(diag: &[R], zero: R) -> Self {
        let mut m = Matrix::zeros(diag.len(), diag.len(), zero);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn zero_elem(&self) -> &R {
        &self.zero
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn from_columns(columns: &[Vec<R>], rows: usize, zero: R) -> Self {
        let mut m = Matrix::zeros(rows, columns.len(), zero);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows, self.zero.clone());
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn map<S: Ring>(&self, zero: S, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect(), zero }
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add_ref(b)).collect();
        Ok(Matrix { entries, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub_ref(b)).collect();
        Ok(Matrix { entries, ..self.clone() })
    }

    pub fn neg(&self) -> Self {
        Matrix { entries: self.entries.iter().map(Ring::neg_ref).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: &R) -> Self {
        Matrix { entries: self.entries.iter().map(|a| a.mul_ref(c)).collect(), ..self.clone() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols, self.zero.clone());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_elem() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero_elem() {
                        let idx = i * out.cols + j;
                        out.entries[idx] = out.entries[idx].add_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.zero.clone(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b)))
            })
            .collect()
    }

    pub fn pow(&self, mut e: u32) -> Result<Self, LinalgError> {
        self.require_square()?;
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows, self.zero.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `M − c·I`.
    pub fn shift(&self, c: &R) -> Result<Self, LinalgError> {
        self.require_square()?;
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i).sub_ref(c);
            m.set(i, i, v);
        }
        Ok(m)
    }

    pub fn require_square(&self) -> Result<(), LinalgError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one_elem()
                    } else {
                        e.is_zero_elem()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Ring::is_zero_elem)
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool, LinalgError> {
        Ok(self.mul(other)? == other.mul(self)?)
    }

    pub fn vstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, entries, zero: self.zero.clone() })
    }

    pub fn hstack(&self, other: &Self) -> Result<Self, LinalgError> {
        Ok(self.transpose().vstack(&other.transpose())?.transpose())
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols.len(), self.zero.clone());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                m.set(i, j, self.get(r, c).clone());
            }
        }
        m
    }

    /// Block-diagonal matrix with the given square blocks.
    pub fn block_diagonal(blocks: &[Self], zero: R) -> Self {
        let n = blocks.iter().map(|b| b.rows).sum();
        let mut m = Matrix::zeros(n, n, zero);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(offset + i, offset + j, b.get(i, j).clone());
                }
            }
            offset += b.rows;
        }
        m
    }
}

/// Result of reducing a matrix to reduced row echelon form.
pub struct Rref<R> {
    pub matrix: Matrix<R>,
    pub pivots: Vec<usize>,
}

impl<R: Field> Matrix<R> {
    pub fn rref(&self) -> Rref<R> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero_elem()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv_ref().expect("pivot is nonzero");
            for j in col..m.cols {
                let v = m.get(row, j).mul_ref(&inv);
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row {
                    continue;
                }
                let factor = m.get(i, col).clone();
                if factor.is_zero_elem() {
                    continue;
                }
                for j in col..m.cols {
                    let v = m.get(i, j).sub_ref(&factor.mul_ref(m.get(row, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel, one vector per free column in ascending order.
    pub fn kernel(&self) -> Vec<Vec<R>> {
        let Rref { matrix, pivots } = self.rref();
        let one = self.zero.one_like();
        let mut basis = Vec::new();
        let mut pivot_iter = pivots.iter().peekable();
        for free in 0..self.cols {
            if pivot_iter.peek() == Some(&&free) {
                pivot_iter.next();
                continue;
            }
            let mut v = vec![self.zero.clone(); self.cols];
            v[free] = one.clone();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = matrix.get(r, free).neg_ref();
            }
            basis.push(v);
        }
        basis
    }

    pub fn determinant(&self) -> Result<R, LinalgError> {
        self.require_square()?;
        let mut m = self.clone();
        let mut det = self.zero.one_like();
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&i| !m.get(i, col).is_zero_elem()) else {
                return Ok(self.zero.clone());
            };
            if p != col {
                m.swap_rows(col, p);
                det = det.neg_ref();
            }
            let pivot = m.get(col, col).clone();
            det = det.mul_ref(&pivot);
            let inv = pivot.inv_ref().expect("pivot is nonzero");
            for i in col + 1..m.rows {
                let factor = m.get(i, col).mul_ref(&inv);
                if factor.is_zero_elem() {
                    continue;
                }
                for j in col..m.cols {
                    let v = m.get(i, j).sub_ref(&factor.mul_ref(m.get(col, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self, LinalgError> {
        self.require_square()?;
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n, self.zero.clone()))?;
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        Ok(matrix.submatrix(0..n, n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Solves `self · X = rhs`, requiring a unique solution (full column rank).
    pub fn solve(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if rhs.rows != self.rows {
            return Err(LinalgError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let n = self.cols;
        let Rref { matrix, pivots } = self.hstack(rhs)?.rref();
        if pivots.len() < n || pivots.get(n.wrapping_sub(1)).is_some_and(|&p| p != n - 1) {
            return Err(LinalgError::Singular);
        }
        if pivots.len() > n {
            return Err(LinalgError::Inconsistent);
        }
        Ok(matrix.submatrix(0..n, n..n + rhs.cols))
    }

    /// `P · self · P⁻¹`.
    pub fn conjugate_by(&self, p: &Self) -> Result<Self, LinalgError> {
        p.mul(self)?.mul(&p.inverse()?)
    }
}

impl IntMatrix {
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(),
            BigInt::zero(),
        )
    }

    pub fn to_rational(&self) -> RatMatrix {
        self.map(BigRational::zero(), |v| BigRational::from_integer(v.clone()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn int_determinant(&self) -> Result<BigInt, LinalgError> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::from(1));
        }
        let mut m = self.to_rows();
        let mut sign = 1;
        let mut prev = BigInt::from(1);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        Ok(&m[n - 1][n - 1] * sign)
    }
}

impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
        }
        write!(f, "]")
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} {}", self.rows, self.cols, self)
    }
}
