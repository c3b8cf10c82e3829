//! Dense exact matrices, inversion and determinant certificates.

use std::ops::{Index, IndexMut, Mul};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::rational::{lcm_of_denominators, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect()).collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
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

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| self.row(i).iter().zip(v).fold(Rational::zero(), |a, (x, y)| a + x * y)).collect()
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// Gauss-Jordan elimination over the rationals.
pub fn mat_inverse(m: &RatMatrix) -> Result<RatMatrix> {
    assert!(m.is_square(), "mat_inverse needs a square matrix");
    let n = m.rows;
    let mut a = m.clone();
    let mut inv = RatMatrix::identity(n);
    for c in 0..n {
        let p = (c..n).find(|&r| !a[(r, c)].is_zero()).ok_or(Error::SingularMatrix)?;
        if p != c {
            for j in 0..n {
                a.data.swap(p * n + j, c * n + j);
                inv.data.swap(p * n + j, c * n + j);
            }
        }
        let pv = a[(c, c)].recip();
        for j in 0..n {
            a[(c, j)] *= &pv;
            inv[(c, j)] *= &pv;
        }
        for r in 0..n {
            if r == c || a[(r, c)].is_zero() {
                continue;
            }
            let f = a[(r, c)].clone();
            for j in 0..n {
                let t = &f * &a[(c, j)];
                a[(r, j)] -= t;
                let t = &f * &inv[(c, j)];
                inv[(r, j)] -= t;
            }
        }
    }
    Ok(inv)
}

/// Rows scaled by the lcm of their denominators.
pub fn clear_row_denominators(m: &RatMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let l = lcm_of_denominators(m.row(i));
            m.row(i).iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Exact determinant over the rationals.
pub fn determinant(m: &RatMatrix) -> Rational {
    assert!(m.is_square());
    let scale = (0..m.rows).fold(BigInt::one(), |acc, i| acc * lcm_of_denominators(m.row(i)));
    Rational::new(bareiss_det(clear_row_denominators(m)), scale)
}

/// Primes just below 2^62.
pub(crate) const PRIMES: [u64; 4] =
    [4611686018427387847, 4611686018427387817, 4611686018427387787, 4611686018427387733];

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn reduce(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    let (_, digits) = r.to_u64_digits();
    debug_assert!(r.sign() != Sign::Minus);
    digits.first().copied().unwrap_or(0)
}

/// Determinant modulo `p` by Gaussian elimination in `F_p`.
pub fn det_mod_p(a: &[Vec<BigInt>], p: u64) -> u64 {
    let n = a.len();
    let mut m: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|x| reduce(x, p)).collect()).collect();
    let mut det = 1u64;
    for c in 0..n {
        let piv = match (c..n).find(|&r| m[r][c] != 0) {
            Some(r) => r,
            None => return 0,
        };
        if piv != c {
            m.swap(piv, c);
            det = p - det;
        }
        det = mulmod(det, m[c][c], p);
        let inv = powmod(m[c][c], p - 2, p);
        for r in c + 1..n {
            if m[r][c] == 0 {
                continue;
            }
            let f = mulmod(m[r][c], inv, p);
            for j in c..n {
                let t = mulmod(f, m[c][j], p);
                m[r][j] = (m[r][j] + p - t) % p;
            }
        }
    }
    det % p
}

/// `true` iff `det(M) != 0`. A nonzero determinant modulo any prime settles it; only
/// when every prime sees zero does the exact Bareiss determinant decide.
pub fn nonzero_det_certificate(m: &RatMatrix) -> bool {
    assert!(m.is_square(), "certificate needs a square matrix");
    let a = clear_row_denominators(m);
    if PRIMES.par_iter().any(|&p| det_mod_p(&a, p) != 0) {
        return true;
    }
    !bareiss_det(a).is_zero()
}

pub fn abs_max(xs: &[Rational]) -> Rational {
    xs.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}
