//! Whether a homogeneous integer system forces chosen variables to vanish.
//!
//! Over ℚ, `Mα = 0 ⟹ α_i = 0` holds iff the standard row vector `e_i` lies in
//! the row space of `M`. In reduced row echelon form that means `i` is a pivot
//! column whose row has no other nonzero entry. The same verdict holds for
//! solutions in any torsion-free abelian group, since such a group embeds in a
//! ℚ-vector space and the row combination producing `e_i` can be cleared of
//! denominators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{IntMatrix, LinalgError};

/// `true` iff every integer (equivalently rational) vector `α` with `Mα = 0`
/// has `α_i = 0` for all `i` in `targets` (0-based column indices).
pub fn forces_zero(m: &IntMatrix, targets: &[usize]) -> Result<bool, LinalgError> {
    Ok(forced_columns(m, targets)?.into_iter().all(|x| x))
}

/// Per-target verdicts of [`forces_zero`], from a single elimination.
pub fn forced_columns(m: &IntMatrix, targets: &[usize]) -> Result<Vec<bool>, LinalgError> {
    check_targets(m.cols(), targets)?;
    let small: Option<Vec<Vec<i64>>> =
        (0..m.rows()).map(|i| m.row(i).iter().map(ToPrimitive::to_i64).collect()).collect();
    if let Some(verdict) = small.and_then(|rows| forced_fast(&rows, m.cols(), targets)) {
        return Ok(verdict);
    }
    Ok(forced_exact(m, targets))
}

/// [`forced_columns`] for a matrix given as `i64` rows. Falls back to exact
/// arithmetic when intermediate values overflow.
pub fn forced_columns_small(rows: &[Vec<i64>], cols: usize, targets: &[usize]) -> Result<Vec<bool>, LinalgError> {
    check_targets(cols, targets)?;
    if rows.iter().any(|r| r.len() != cols) {
        return Err(LinalgError::RaggedRows);
    }
    if let Some(verdict) = forced_fast(rows, cols, targets) {
        return Ok(verdict);
    }
    Ok(forced_exact(&IntMatrix::from_i64_rows(rows)?, targets))
}

fn check_targets(cols: usize, targets: &[usize]) -> Result<(), LinalgError> {
    match targets.iter().find(|&&i| i >= cols) {
        Some(&index) => Err(LinalgError::IndexOutOfRange { index, cols }),
        None => Ok(()),
    }
}

fn forced_from_echelon<T: PartialEq + Copy>(rows: &[Vec<T>], pivots: &[usize], zero: T, targets: &[usize]) -> Vec<bool> {
    targets
        .iter()
        .map(|&i| match pivots.iter().position(|&p| p == i) {
            Some(r) => rows[r].iter().enumerate().all(|(j, &x)| j == i || x == zero),
            None => false,
        })
        .collect()
}

const CONTENT_THRESHOLD: i128 = 1 << 32;

/// Fraction-free Gauss–Jordan elimination in `i128`, dividing a row by its
/// content once an entry passes `CONTENT_THRESHOLD`. `None` on overflow.
fn forced_fast(rows: &[Vec<i64>], cols: usize, targets: &[usize]) -> Option<Vec<bool>> {
    let mut m: Vec<Vec<i128>> =
        rows.iter().filter(|r| r.iter().any(|&x| x != 0)).map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == m.len() {
            break;
        }
        let Some(p) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i == rank || m[i][col] == 0 {
                continue;
            }
            let a = m[rank][col];
            let b = m[i][col];
            let (fa, fb) = if a.abs() == 1 {
                (1, b * a)
            } else {
                let g = a.gcd(&b);
                (a / g, b / g)
            };
            let (pivot_row, row) = if i < rank {
                let (lo, hi) = m.split_at_mut(rank);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = m.split_at_mut(i);
                (&lo[rank], &mut hi[0])
            };
            let mut largest = 0i128;
            for j in 0..cols {
                let v = row[j].checked_mul(fa)?.checked_sub(pivot_row[j].checked_mul(fb)?)?;
                row[j] = v;
                largest = largest.max(v.abs());
            }
            if largest > CONTENT_THRESHOLD {
                let content = row.iter().fold(0i128, |g, x| g.gcd(x));
                row.iter_mut().for_each(|x| *x /= content);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    Some(forced_from_echelon(&m, &pivots, 0, targets))
}

fn forced_exact(m: &IntMatrix, targets: &[usize]) -> Vec<bool> {
    let rref = m.to_rational().rref();
    let owned = rref.matrix.to_rows();
    let rows: Vec<Vec<&BigRational>> = owned.iter().map(|r| r.iter().collect()).collect();
    forced_from_echelon(&rows, &rref.pivots, &BigRational::zero(), targets)
}

/// Rational kernel basis scaled to primitive integer vectors.
pub fn integer_kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.to_rational()
        .kernel()
        .into_iter()
        .map(|v| {
            let den = v.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            ints.into_iter().map(|x| if g.is_zero() { x } else { x / &g }).collect()
        })
        .collect()
}
