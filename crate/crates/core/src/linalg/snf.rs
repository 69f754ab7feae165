use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `S = U · M · V` with `U`, `V` unimodular and `S` diagonal,
/// `d_1 | d_2 | … `, all `d_i ≥ 0` (zeros last).
#[derive(Clone, Debug, PartialEq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

struct Work {
    s: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap(a, b);
        self.u.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in self.s.iter_mut().chain(self.v.iter_mut()) {
            row.swap(a, b);
        }
    }

    /// row[target] -= q · row[source]
    fn row_axpy(&mut self, target: usize, source: usize, q: &BigInt) {
        for m in [&mut self.s, &mut self.u] {
            let src = m[source].clone();
            for (t, s) in m[target].iter_mut().zip(src) {
                *t -= q * s;
            }
        }
    }

    /// col[target] -= q · col[source]
    fn col_axpy(&mut self, target: usize, source: usize, q: &BigInt) {
        for m in [&mut self.s, &mut self.v] {
            for row in m.iter_mut() {
                let s = row[source].clone();
                row[target] -= q * s;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.s, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -&*x;
            }
        }
    }
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work { s: m.to_rows(), u: identity_rows(rows), v: identity_rows(cols) };
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&w.s, t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !w.s[i][t].is_zero() {
                    let q = w.s[i][t].div_floor(&w.s[t][t]);
                    w.row_axpy(i, t, &q);
                    if !w.s[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !w.s[t][j].is_zero() {
                    let q = w.s[t][j].div_floor(&w.s[t][t]);
                    w.col_axpy(j, t, &q);
                    if !w.s[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                // pivot divides the remaining block, or pull in an offending row
                let offender = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !w.s[i][j].is_multiple_of(&w.s[t][t])));
                match offender {
                    None => break,
                    Some(i) => {
                        w.row_axpy(t, i, &BigInt::from(-1));
                        continue;
                    }
                }
            }
            let (pi, pj) = min_abs_entry_in_cross(&w.s, t);
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
        }
        if w.s[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    let zero = BigInt::zero();
    let build = |rows: Vec<Vec<BigInt>>| IntMatrix::from_rows(rows, zero.clone()).expect("rectangular");
    SmithForm {
        u: build_square(w.u, m.rows(), &build),
        s: IntMatrix::new(
            m.rows(),
            m.cols(),
            w.s.into_iter().flatten().collect(),
            BigInt::zero(),
        )
        .expect("shape"),
        v: build_square(w.v, m.cols(), &build),
    }
}

fn build_square(rows: Vec<Vec<BigInt>>, n: usize, build: &impl Fn(Vec<Vec<BigInt>>) -> IntMatrix) -> IntMatrix {
    if n == 0 {
        IntMatrix::zeros(0, 0, BigInt::zero())
    } else {
        build(rows)
    }
}

fn min_abs_entry(s: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in s.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < s[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smallest nonzero entry in row `t` or column `t` (from index `t` on).
fn min_abs_entry_in_cross(s: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut best_abs: Option<BigInt> = (!s[t][t].is_zero()).then(|| s[t][t].abs());
    let candidates = (t..s.len()).map(|i| (i, t)).chain((t..s[t].len()).map(|j| (t, j)));
    for (i, j) in candidates {
        let x = &s[i][j];
        if !x.is_zero() && best_abs.as_ref().map_or(true, |b| x.abs() < *b) {
            best = (i, j);
            best_abs = Some(x.abs());
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows).unwrap()
    }

    fn check(m: &IntMatrix) -> SmithForm {
        let f = smith_normal_form(m);
        assert_eq!(f.u.mul(m).unwrap().mul(&f.v).unwrap(), f.s);
        assert_eq!(f.u.int_determinant().unwrap().abs(), BigInt::one());
        assert_eq!(f.v.int_determinant().unwrap().abs(), BigInt::one());
        let d = f.diagonal();
        for w in d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]) || (w[0].is_zero() && w[1].is_zero()));
        }
        f
    }

    #[test]
    fn examples() {
        let f = check(&im(&[vec![1, 0], vec![0, 6]]));
        assert!(f.u.is_identity() && f.v.is_identity());
        assert_eq!(check(&im(&[vec![2, 0], vec![0, 3]])).diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(check(&im(&[vec![2, 1], vec![4, 2]])).diagonal(), vec![BigInt::from(1), BigInt::from(0)]);
    }

    #[test]
    fn rectangular_and_empty() {
        let f = check(&im(&[vec![2, 4, 4], vec![-6, 6, 12]]));
        assert_eq!(f.diagonal(), vec![BigInt::from(2), BigInt::from(6)]);
        let e = smith_normal_form(&IntMatrix::zeros(0, 3, BigInt::zero()));
        assert_eq!(e.v.rows(), 3);
    }
}
