//! Cubic arrays of rationals, indexed `[a][b][c]`.

use num_traits::Zero;

use super::matrix::RatMatrix;
use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor3 {
    n: usize,
    data: Vec<Rational>,
}

impl Tensor3 {
    pub fn zeros(n: usize) -> Self {
        Tensor3 { n, data: vec![Rational::zero(); n * n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    data.push(f(a, b, c));
                }
            }
        }
        Tensor3 { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &Rational {
        &self.data[(a * self.n + b) * self.n + c]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, v: Rational) {
        let n = self.n;
        self.data[(a * n + b) * n + c] = v;
    }

    pub fn is_symmetric_in_first_two(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.get(a, b, c) == self.get(b, a, c))))
    }

    pub fn is_totally_symmetric(&self) -> bool {
        let n = self.n;
        self.is_symmetric_in_first_two()
            && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.get(a, b, c) == self.get(a, c, b))))
    }

    /// `out[α][β][γ] = Σ m1[α][a] m2[β][b] m3[γ][c] T[a][b][c]`
    pub fn transform(&self, m1: &RatMatrix, m2: &RatMatrix, m3: &RatMatrix) -> Tensor3 {
        let n = self.n;
        let mut t1 = Tensor3::zeros(n);
        for al in 0..n {
            for a in 0..n {
                let m = &m1[(al, a)];
                if m.is_zero() {
                    continue;
                }
                for b in 0..n {
                    for c in 0..n {
                        let v = self.get(a, b, c);
                        if !v.is_zero() {
                            t1.data[(al * n + b) * n + c] += m * v;
                        }
                    }
                }
            }
        }
        let mut t2 = Tensor3::zeros(n);
        for al in 0..n {
            for be in 0..n {
                for b in 0..n {
                    let m = &m2[(be, b)];
                    if m.is_zero() {
                        continue;
                    }
                    for c in 0..n {
                        let v = t1.get(al, b, c);
                        if !v.is_zero() {
                            t2.data[(al * n + be) * n + c] += m * v;
                        }
                    }
                }
            }
        }
        let mut t3 = Tensor3::zeros(n);
        for al in 0..n {
            for be in 0..n {
                for ga in 0..n {
                    let mut s = Rational::zero();
                    for c in 0..n {
                        let m = &m3[(ga, c)];
                        if !m.is_zero() {
                            s += m * t2.get(al, be, c);
                        }
                    }
                    t3.data[(al * n + be) * n + ga] = s;
                }
            }
        }
        t3
    }

    /// Contract the last index with a vector.
    pub fn contract_last(&self, v: &[Rational]) -> RatMatrix {
        let n = self.n;
        RatMatrix::from_fn(n, n, |a, b| (0..n).fold(Rational::zero(), |acc, c| acc + self.get(a, b, c) * &v[c]))
    }

    /// Positions where `self` and `other` differ.
    pub fn mismatches(&self, other: &Tensor3) -> Vec<(usize, usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.get(a, b, c) != other.get(a, b, c) {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, mat_inverse};

    #[test]
    fn transform_by_identity_and_back() {
        let t = Tensor3::from_fn(3, |a, b, c| int((a * 9 + b * 3 + c) as i64));
        let id = RatMatrix::identity(3);
        assert_eq!(t.transform(&id, &id, &id), t);
        let m = RatMatrix::from_i64(&[vec![1, 2, 0], vec![0, 1, 3], vec![1, 0, 1]]);
        let mi = mat_inverse(&m).unwrap();
        assert_eq!(t.transform(&m, &m, &m).transform(&mi, &mi, &mi), t);
    }
}
