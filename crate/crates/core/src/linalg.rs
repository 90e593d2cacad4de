//! Dense exact linear algebra: Gaussian-integer matrices, fraction-free
//! elimination for ranks and determinants, field elimination for solving,
//! and small-matrix characteristic polynomials by evaluation–interpolation.

use crate::scalar::{ExactScalar, GaussRat, Scalar};
use num::{BigInt, BigRational, One, Zero};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct DMat<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Clone> DMat<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        DMat { rows, cols, data }
    }

    pub fn fill(rows: usize, cols: usize, v: T) -> Self {
        DMat {
            rows,
            cols,
            data: vec![v; rows * cols],
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut T {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> DMat<U> {
        DMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }
}

impl<T: Scalar> DMat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::fill(rows, cols, T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        DMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(o.data.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        DMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(o.data.iter())
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, t: &T) -> Self {
        self.map(|x| x.mul(t))
    }

    pub fn matmul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.mul(b);
                    let dst = out.at_mut(r, c);
                    *dst = dst.add(&t);
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![T::zero(); self.rows];
        for r in 0..self.rows {
            let mut acc = T::zero();
            for c in 0..self.cols {
                let a = self.at(r, c);
                if a.is_zero() || v[c].is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(&v[c]));
            }
            out[r] = acc;
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Gaussian integers

/// A Gaussian integer re + im·i.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GInt {
    pub fn new(re: BigInt, im: BigInt) -> Self {
        GInt { re, im }
    }

    pub fn from_i64(n: i64) -> Self {
        GInt {
            re: BigInt::from(n),
            im: BigInt::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        GInt::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        GInt::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn neg(&self) -> Self {
        GInt::new(-self.re.clone(), -self.im.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        GInt::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn conj(&self) -> Self {
        GInt::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact quotient; panics when `o` does not divide `self`.
    pub fn exact_div(&self, o: &Self) -> Self {
        let n = o.norm();
        assert!(!n.is_zero(), "division by zero");
        let num = self.mul(&o.conj());
        let (qr, rr) = num::Integer::div_rem(&num.re, &n);
        let (qi, ri) = num::Integer::div_rem(&num.im, &n);
        assert!(rr.is_zero() && ri.is_zero(), "inexact Gaussian division");
        GInt::new(qr, qi)
    }

    pub fn to_gauss_rat(&self) -> GaussRat {
        GaussRat::new(
            BigRational::from_integer(self.re.clone()),
            BigRational::from_integer(self.im.clone()),
        )
    }

    /// Max of |re| and |im| as a crude magnitude bound.
    pub fn magnitude_bound(&self) -> BigInt {
        let a = self.re.magnitude().clone();
        let b = self.im.magnitude().clone();
        BigInt::from(a.max(b))
    }
}

impl Scalar for GInt {
    fn zero() -> Self {
        GInt::zero()
    }
    fn one() -> Self {
        GInt::one()
    }
    fn is_zero(&self) -> bool {
        GInt::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        GInt::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        GInt::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        GInt::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        GInt::neg(self)
    }
    fn conj(&self) -> Self {
        GInt::conj(self)
    }
    fn from_i64(n: i64) -> Self {
        GInt::from_i64(n)
    }
    fn inv(&self) -> Option<Self> {
        if self.norm().is_one() {
            Some(self.conj())
        } else {
            None
        }
    }
}

impl Scalar for GaussRat {
    fn zero() -> Self {
        GaussRat::zero()
    }
    fn one() -> Self {
        GaussRat::one()
    }
    fn is_zero(&self) -> bool {
        GaussRat::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        GaussRat::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        GaussRat::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        GaussRat::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        GaussRat::neg(self)
    }
    fn conj(&self) -> Self {
        GaussRat::conj(self)
    }
    fn from_i64(n: i64) -> Self {
        GaussRat::from_i64(n)
    }
    fn inv(&self) -> Option<Self> {
        GaussRat::inv(self)
    }
}

/// Integral domains with exact division, as needed by fraction-free
/// elimination.
pub trait ExactDomain: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn exact_div(&self, o: &Self) -> Self;
}

impl ExactDomain for GInt {
    fn zero() -> Self {
        GInt::zero()
    }
    fn one() -> Self {
        GInt::one()
    }
    fn is_zero(&self) -> bool {
        GInt::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        GInt::mul(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        GInt::sub(self, o)
    }
    fn exact_div(&self, o: &Self) -> Self {
        GInt::exact_div(self, o)
    }
}

impl ExactDomain for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn one() -> Self {
        ExactScalar::one()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        ExactScalar::mul(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        ExactScalar::sub(self, o)
    }
    fn exact_div(&self, o: &Self) -> Self {
        self.mul(&o.inv().expect("division by zero"))
    }
}

/// Rank by fraction-free (Bareiss) elimination with full pivoting.
pub fn bareiss_rank<T: ExactDomain>(m: &DMat<T>) -> usize {
    let mut a = m.clone();
    let n = a.rows.min(a.cols);
    let mut prev = T::one();
    let mut rank = 0;
    for k in 0..n {
        // find a nonzero pivot anywhere in the remaining block
        let mut pivot = None;
        'search: for r in k..a.rows {
            for c in k..a.cols {
                if !a.at(r, c).is_zero() {
                    pivot = Some((r, c));
                    break 'search;
                }
            }
        }
        let Some((pr, pc)) = pivot else {
            return rank;
        };
        a.swap_rows(k, pr);
        a.swap_cols(k, pc);
        rank += 1;
        let pk = a.at(k, k).clone();
        for r in k + 1..a.rows {
            let ark = a.at(r, k).clone();
            for c in k + 1..a.cols {
                let num = pk.mul(a.at(r, c)).sub(&ark.mul(a.at(k, c)));
                *a.at_mut(r, c) = num.exact_div(&prev);
            }
            *a.at_mut(r, k) = T::zero();
        }
        prev = pk;
    }
    rank
}

/// Determinant of a square matrix by Bareiss elimination.
pub fn bareiss_det<T: ExactDomain>(m: &DMat<T>) -> T {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return T::one();
    }
    let mut a = m.clone();
    let mut prev = T::one();
    let mut sign_flip = false;
    for k in 0..n - 1 {
        if a.at(k, k).is_zero() {
            let Some(pr) = (k + 1..n).find(|&r| !a.at(r, k).is_zero()) else {
                return T::zero();
            };
            a.swap_rows(k, pr);
            sign_flip = !sign_flip;
        }
        let pk = a.at(k, k).clone();
        for r in k + 1..n {
            let ark = a.at(r, k).clone();
            for c in k + 1..n {
                let num = pk.mul(a.at(r, c)).sub(&ark.mul(a.at(k, c)));
                *a.at_mut(r, c) = num.exact_div(&prev);
            }
        }
        prev = pk;
    }
    let det = a.at(n - 1, n - 1).clone();
    if sign_flip {
        T::zero().sub(&det)
    } else {
        det
    }
}

/// Solve A x = b over a scalar field by Gaussian elimination.
/// Returns None when the system is singular/inconsistent.
pub fn solve_field<T: Scalar>(a: &DMat<T>, b: &[T]) -> Option<Vec<T>> {
    assert_eq!(a.rows, b.len());
    let n = a.rows;
    let m = a.cols;
    let mut aug = DMat::from_fn(n, m + 1, |r, c| {
        if c < m {
            a.at(r, c).clone()
        } else {
            b[r].clone()
        }
    });
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..m {
        let Some(pr) = (row..n).find(|&r| !aug.at(r, col).is_zero()) else {
            continue;
        };
        aug.swap_rows(row, pr);
        let pinv = aug.at(row, col).inv()?;
        for c in col..=m {
            let v = aug.at(row, c).mul(&pinv);
            *aug.at_mut(row, c) = v;
        }
        for r in 0..n {
            if r == row || aug.at(r, col).is_zero() {
                continue;
            }
            let f = aug.at(r, col).clone();
            for c in col..=m {
                let v = aug.at(r, c).sub(&f.mul(aug.at(row, c)));
                *aug.at_mut(r, c) = v;
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    // inconsistent?
    for r in row..n {
        if !aug.at(r, m).is_zero() {
            return None;
        }
    }
    let mut x = vec![T::zero(); m];
    for (r, &col) in pivot_cols.iter().enumerate() {
        x[col] = aug.at(r, m).clone();
    }
    Some(x)
}

/// Rank over a scalar field.
pub fn field_rank<T: Scalar>(a: &DMat<T>) -> usize {
    let mut m = a.clone();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..m.cols {
        let Some(pr) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
            continue;
        };
        m.swap_rows(row, pr);
        let pinv = m.at(row, col).inv().expect("nonzero pivot");
        for r in row + 1..m.rows {
            if m.at(r, col).is_zero() {
                continue;
            }
            let f = m.at(r, col).mul(&pinv);
            for c in col..m.cols {
                let v = m.at(r, c).sub(&f.mul(m.at(row, c)));
                *m.at_mut(r, c) = v;
            }
        }
        rank += 1;
        row += 1;
        if row == m.rows {
            break;
        }
    }
    rank
}

/// Characteristic polynomial det(xI − M) of a Gaussian-integer matrix by
/// fraction-free determinant evaluation at deg+1 integer points followed by
/// exact Lagrange interpolation. Intended for small n.
pub fn charpoly_small(m: &DMat<GInt>) -> Vec<GInt> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let points: Vec<i64> = (0..=n as i64).collect();
    let values: Vec<GInt> = points
        .iter()
        .map(|&t| {
            let shifted = DMat::from_fn(n, n, |r, c| {
                let e = m.at(r, c).neg();
                if r == c {
                    e.add(&GInt::from_i64(t))
                } else {
                    e
                }
            });
            bareiss_det(&shifted)
        })
        .collect();
    // Lagrange interpolation with rational arithmetic
    let mut coeffs = vec![GaussRat::zero(); n + 1];
    for (j, &xj) in points.iter().enumerate() {
        // basis polynomial ∏_{k≠j} (x − x_k)/(x_j − x_k)
        let mut denom = BigInt::one();
        let mut basis = vec![BigRational::zero(); n + 1];
        basis[0] = BigRational::one();
        let mut deg = 0;
        for (k, &xk) in points.iter().enumerate() {
            if k == j {
                continue;
            }
            denom *= BigInt::from(xj - xk);
            // multiply basis by (x − x_k)
            deg += 1;
            for d in (1..=deg).rev() {
                let prev = basis[d - 1].clone();
                basis[d] = &basis[d] * BigRational::from_integer(BigInt::from(-xk)) + prev;
            }
            basis[0] = &basis[0] * BigRational::from_integer(BigInt::from(-xk));
        }
        let dinv = BigRational::new(BigInt::one(), denom);
        let vj = values[j].to_gauss_rat();
        for d in 0..=n {
            let w = &basis[d] * &dinv;
            let term = GaussRat::new(&vj.re * &w, &vj.im * &w);
            coeffs[d] = coeffs[d].add(&term);
        }
    }
    coeffs
        .into_iter()
        .map(|c| {
            assert!(c.re.is_integer() && c.im.is_integer(), "non-integer charpoly");
            GInt::new(c.re.to_integer(), c.im.to_integer())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gmat(vals: &[&[i64]]) -> DMat<GInt> {
        DMat::from_fn(vals.len(), vals[0].len(), |r, c| GInt::from_i64(vals[r][c]))
    }

    #[test]
    fn bareiss_det_matches_cofactor() {
        let m = gmat(&[&[2, 1, 0], &[1, -3, 4], &[0, 5, 1]]);
        // det = 2(−3·1 − 4·5) − 1(1·1 − 4·0) = 2(−23) − 1 = −47
        assert_eq!(bareiss_det(&m), GInt::from_i64(-47));
        let singular = gmat(&[&[1, 2], &[2, 4]]);
        assert_eq!(bareiss_det(&singular), GInt::zero());
    }

    #[test]
    fn bareiss_rank_with_pivoting() {
        let m = gmat(&[&[0, 0, 1], &[0, 0, 2], &[1, 0, 0]]);
        assert_eq!(bareiss_rank(&m), 2);
        assert_eq!(bareiss_rank(&gmat(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(bareiss_rank(&gmat(&[&[1, 2], &[3, 4]])), 2);
    }

    #[test]
    fn field_solver_round_trip() {
        let a = DMat::from_fn(3, 3, |r, c| GaussRat::from_i64((r * 3 + c) as i64 + ((r == c) as i64) * 7));
        let x = vec![
            GaussRat::from_i64(1),
            GaussRat::from_i64(-2),
            GaussRat::new(
                BigRational::new(BigInt::from(1), BigInt::from(3)),
                BigRational::zero(),
            ),
        ];
        let b = a.matvec(&x);
        let solved = solve_field(&a, &b).unwrap();
        assert_eq!(solved, x);
    }

    #[test]
    fn small_charpoly_is_monic_and_correct() {
        // companion matrix of x² − x − 1
        let m = gmat(&[&[0, 1], &[1, 1]]);
        let c = charpoly_small(&m);
        assert_eq!(c.len(), 3);
        assert_eq!(c[2], GInt::one());
        assert_eq!(c[1], GInt::from_i64(-1));
        assert_eq!(c[0], GInt::from_i64(-1));
        // nilpotent
        let m = gmat(&[&[0, 1], &[0, 0]]);
        let c = charpoly_small(&m);
        assert_eq!(c, vec![GInt::zero(), GInt::zero(), GInt::one()]);
    }
}
