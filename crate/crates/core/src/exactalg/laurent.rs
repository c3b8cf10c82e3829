//! Sparse Laurent polynomials in `q_a = e^{x_a}`.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{pow_i, Rational};
use crate::error::{Error, Result};

/// Exponent vectors are kept in a `BTreeMap`, so iteration order is canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiLaurent {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Rational>,
}

impl MultiLaurent {
    pub fn zero(nvars: usize) -> Self {
        MultiLaurent { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn monomial(exps: Vec<i64>, c: Rational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i64]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: Rational) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiLaurent { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    /// `p(x) -> p(k x)`: multiplies every exponent vector by `k`.
    pub fn scale_exponents(&self, k: i64) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.iter().map(|a| a * k).collect(), c.clone());
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(self.nvars, Rational::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Apply a map to every exponent vector (e.g. a Weyl reflection).
    pub fn map_exponents(&self, f: impl Fn(&[i64]) -> Vec<i64>) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    /// Sum of coefficients, i.e. the value at `q = (1,…,1)`.
    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, c| a + c)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        Ok(self.eval_with_gradient(point)?.0)
    }

    /// Value and `∂/∂x_a` for every `a`; a monomial's `a`-th derivative is its `a`-th
    /// exponent times itself.
    pub fn eval_with_gradient(&self, point: &[Rational]) -> Result<(Rational, Vec<Rational>)> {
        assert_eq!(point.len(), self.nvars, "point dimension");
        if point.iter().any(Zero::is_zero) {
            return Err(Error::ZeroCoordinate);
        }
        let mut cache: Vec<HashMap<i64, Rational>> = vec![HashMap::new(); self.nvars];
        let mut value = Rational::zero();
        let mut grad = vec![Rational::zero(); self.nvars];
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (a, &k) in e.iter().enumerate() {
                if k != 0 {
                    let f = cache[a].entry(k).or_insert_with(|| pow_i(&point[a], k));
                    m *= &*f;
                }
            }
            for (a, &k) in e.iter().enumerate() {
                if k != 0 {
                    grad[a] += &m * Rational::from_integer(k.into());
                }
            }
            value += m;
        }
        Ok((value, grad))
    }
}

impl Add for &MultiLaurent {
    type Output = MultiLaurent;
    fn add(self, rhs: &MultiLaurent) -> MultiLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiLaurent {
    type Output = MultiLaurent;
    fn sub(self, rhs: &MultiLaurent) -> MultiLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MultiLaurent {
    type Output = MultiLaurent;
    fn neg(self) -> MultiLaurent {
        self.scale(&-Rational::one())
    }
}

impl Mul for &MultiLaurent {
    type Output = MultiLaurent;
    fn mul(self, rhs: &MultiLaurent) -> MultiLaurent {
        assert_eq!(self.nvars, rhs.nvars);
        let mut acc: HashMap<Vec<i64>, Rational> = HashMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        MultiLaurent { nvars: self.nvars, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}
