//! Dense univariate polynomials and reduced rational functions in `μ`, with residues.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::{mulmod, powmod, reduce, PRIMES};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Coefficients from low to high degree; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The variable `μ`.
    pub fn var() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `μ - r`
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer(BigInt::from(k))).collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Index of the lowest nonzero coefficient (`None` for zero).
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// The first `count` coefficients of `p(ν + a)` in powers of `ν`.
    pub fn taylor_coeffs(&self, a: &Rational, count: usize) -> Vec<Rational> {
        let n = self.coeffs.len();
        let mut apow = Vec::with_capacity(n);
        let mut acc = Rational::one();
        for _ in 0..n {
            apow.push(acc.clone());
            acc *= a;
        }
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            let mut s = Rational::zero();
            let mut binom = BigInt::one();
            for j in k..n {
                if j > k {
                    binom = binom * BigInt::from(j) / BigInt::from(j - k);
                }
                if !self.coeffs[j].is_zero() {
                    s += &self.coeffs[j] * &apow[j - k] * Rational::from_integer(binom.clone());
                }
            }
            out.push(s);
        }
        out
    }

    pub fn taylor_shift(&self, a: &Rational) -> Self {
        Self::new(self.taylor_coeffs(a, self.coeffs.len()))
    }

    /// Polynomial long division.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let inv = d.lead().recip();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// `self^{-1} mod m`, if it exists.
    pub fn inverse_mod(&self, m: &UniPoly) -> Option<UniPoly> {
        let (mut r0, mut r1) = (m.clone(), self.divrem(m).1);
        let (mut s0, mut s1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = &s0 - &(&q * &s1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let c = r0.lead().recip();
        Some(s0.scale(&c).divrem(m).1)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*mu")?,
                _ => write!(f, "({c})*mu^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

/// `num/den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniRational {
    num: UniPoly,
    den: UniPoly,
}

impl UniRational {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::from_poly(UniPoly::zero());
        }
        let g = num.gcd(&den);
        let (mut n, _) = num.divrem(&g);
        let (mut d, _) = den.divrem(&g);
        let l = d.lead().recip();
        n = n.scale(&l);
        d = d.scale(&l);
        UniRational { num: n, den: d }
    }

    /// `num/den` reduced only by linear factors at the listed points, skipping the full gcd.
    /// Callers know every other common factor is absent.
    pub fn with_known_cancellations(mut num: UniPoly, mut den: UniPoly, points: &[Rational]) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::from_poly(UniPoly::zero());
        }
        for p in points {
            let lin = UniPoly::linear_root(p);
            while num.eval(p).is_zero() && den.eval(p).is_zero() {
                num = num.divrem(&lin).0;
                den = den.divrem(&lin).0;
            }
        }
        let l = den.lead().recip();
        UniRational { num: num.scale(&l), den: den.scale(&l) }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        UniRational { num: p, den: UniPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    /// `c / (μ - r)`
    pub fn simple_pole(c: Rational, r: &Rational) -> Self {
        Self::new(UniPoly::constant(c), UniPoly::linear_root(r))
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::from_poly(UniPoly::zero());
        }
        UniRational { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn recip(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den)
    }

    /// Multiplicity of `p` as a pole (0 if regular).
    pub fn pole_order(&self, p: &Rational) -> usize {
        let mut d = self.den.clone();
        let lin = UniPoly::linear_root(p);
        let mut k = 0;
        loop {
            let (q, r) = d.divrem(&lin);
            if !r.is_zero() || d.degree() == Some(0) {
                return k;
            }
            d = q;
            k += 1;
        }
    }

    /// Pole order of the differential `f dμ` at `μ = ∞` (0 if regular there).
    pub fn pole_order_at_infinity(&self) -> usize {
        if self.num.is_zero() {
            return 0;
        }
        // f(1/w) / w^2 ~ w^{deg den - deg num - 2}
        let e = self.den.degree().unwrap() as i64 - self.num.degree().unwrap() as i64 - 2;
        if e < 0 {
            (-e) as usize
        } else {
            0
        }
    }
}

impl fmt::Display for UniRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl Add for &UniRational {
    type Output = UniRational;
    fn add(self, rhs: &UniRational) -> UniRational {
        if self.den == rhs.den {
            return UniRational::new(&self.num + &rhs.num, self.den.clone());
        }
        UniRational::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &UniRational {
    type Output = UniRational;
    fn sub(self, rhs: &UniRational) -> UniRational {
        self + &(-rhs)
    }
}

impl Neg for &UniRational {
    type Output = UniRational;
    fn neg(self) -> UniRational {
        UniRational { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &UniRational {
    type Output = UniRational;
    fn mul(self, rhs: &UniRational) -> UniRational {
        UniRational::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// First `n` coefficients of the power series `a/b`, `b[0] != 0`.
/// First `n` coefficients of the power series `a / b`; `b[0]` must be nonzero.
pub fn series_div(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let inv = b[0].recip();
    let mut c: Vec<Rational> = Vec::with_capacity(n);
    for k in 0..n {
        let mut s = a.get(k).cloned().unwrap_or_else(Rational::zero);
        for r in 0..k {
            if let Some(bk) = b.get(k - r) {
                s -= &c[r] * bk;
            }
        }
        c.push(s * &inv);
    }
    c
}

/// Coefficient of `(μ - pole)^{-1}` in the expansion of `f`, via a Taylor shift of
/// `(μ - pole)^mult · f`.
pub fn residue_at(f: &UniRational, pole: &Rational, mult: usize) -> Result<Rational> {
    if f.is_zero() {
        return Ok(Rational::zero());
    }
    let dc = f.den.taylor_coeffs(pole, mult + 1);
    let v = match dc.iter().position(|c| !c.is_zero()) {
        Some(v) => v,
        None => return Err(Error::PoleOrderExceeded),
    };
    if v == 0 {
        return Ok(Rational::zero());
    }
    let d = f.den.taylor_coeffs(pole, 2 * v);
    let n = f.num.taylor_coeffs(pole, v);
    let s = series_div(&n, &d[v..], v);
    Ok(s[v - 1].clone())
}

/// `-(coefficient of μ^{-1})` at infinity; finite residues plus this sum to zero.
pub fn residue_at_infinity(f: &UniRational) -> Rational {
    if f.is_zero() {
        return Rational::zero();
    }
    let a = f.num.degree().unwrap();
    let b = f.den.degree().unwrap();
    // μ^{-1} coefficient of f at ∞ = w^{a-b+1} coefficient of rev(num)/rev(den)
    let k = a as i64 - b as i64 + 1;
    if k < 0 {
        return Rational::zero();
    }
    let k = k as usize;
    let nr: Vec<Rational> = f.num.coeffs.iter().rev().cloned().collect();
    let dr: Vec<Rational> = f.den.coeffs.iter().rev().cloned().collect();
    let s = series_div(&nr, &dr, k + 1);
    -s[k].clone()
}

/// Coefficients in `F_m`, or `None` if a denominator or the leading coefficient vanishes there.
fn to_fp(a: &UniPoly, m: u64) -> Option<Vec<u64>> {
    let v = a
        .coeffs
        .iter()
        .map(|c| {
            let d = reduce(c.denom(), m);
            (d != 0).then(|| mulmod(reduce(c.numer(), m), powmod(d, m - 2, m), m))
        })
        .collect::<Option<Vec<u64>>>()?;
    (v.last() != Some(&0)).then_some(v)
}

fn trim_fp(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn gcd_degree_fp(mut a: Vec<u64>, mut b: Vec<u64>, m: u64) -> usize {
    trim_fp(&mut a);
    trim_fp(&mut b);
    while !b.is_empty() {
        let inv = powmod(*b.last().unwrap(), m - 2, m);
        while a.len() >= b.len() {
            let q = mulmod(*a.last().unwrap(), inv, m);
            let off = a.len() - b.len();
            for (i, &bi) in b.iter().enumerate() {
                a[off + i] = (a[off + i] + m - mulmod(q, bi, m)) % m;
            }
            trim_fp(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Whether `a` and `b` have no common root. Coprime images modulo a prime that keeps both
/// degrees settle it; otherwise the gcd is taken over the rationals.
pub fn coprime(a: &UniPoly, b: &UniPoly) -> bool {
    for &m in &PRIMES {
        if let (Some(x), Some(y)) = (to_fp(a, m), to_fp(b, m)) {
            if gcd_degree_fp(x, y, m) == 0 {
                return true;
            }
        }
    }
    a.gcd(b).degree() == Some(0)
}

/// Sum of the residues of `f` over the (possibly irrational) roots of `p`.
///
/// Requires `p` squarefree, dividing `den(f)` exactly once and coprime to the rest of it;
/// the sum is the trace of multiplication by `num / (p' · rest)` on `Q[μ]/(p)`.
pub fn residue_sum_at_roots(f: &UniRational, p: &UniPoly) -> Result<Rational> {
    let n = match p.degree() {
        Some(0) | None => return Ok(Rational::zero()),
        Some(n) => n,
    };
    let bad = |m: &str| Error::Invalid(format!("residue_sum_at_roots: {m}"));
    if !coprime(p, &p.derivative()) {
        return Err(bad("polynomial not squarefree"));
    }
    let (rest, r) = f.den.divrem(p);
    if !r.is_zero() {
        return Err(bad("roots are not poles"));
    }
    let h_den = &p.derivative() * &rest;
    let inv = h_den.inverse_mod(p).ok_or_else(|| bad("poles not simple"))?;
    let h = (&f.num * &inv).divrem(p).1;
    let mut cur = h;
    let mut tr = Rational::zero();
    let x = UniPoly::var();
    for k in 0..n {
        tr += cur.coeff(k);
        cur = (&cur * &x).divrem(p).1;
    }
    Ok(tr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{frac, int};

    fn inv_linear(r: i64) -> UniRational {
        UniRational::simple_pole(int(1), &int(r))
    }

    #[test]
    fn residue_examples() {
        let f = UniRational::new(UniPoly::one(), UniPoly::var());
        assert_eq!(residue_at(&f, &int(0), 1).unwrap(), int(1));
        let g = UniRational::new(UniPoly::from_ints(&[2, 3]), UniPoly::from_ints(&[0, 0, 1]));
        assert_eq!(residue_at(&g, &int(0), 2).unwrap(), int(3));
        let h = &inv_linear(2) * &inv_linear(5);
        assert_eq!(residue_at(&h, &int(2), 1).unwrap(), frac(-1, 3));
    }

    #[test]
    fn pole_order_exceeded() {
        let g = UniRational::new(UniPoly::one(), UniPoly::from_ints(&[0, 0, 1]));
        assert_eq!(residue_at(&g, &int(0), 1), Err(Error::PoleOrderExceeded));
    }

    #[test]
    fn infinity_examples() {
        let f = UniRational::new(UniPoly::one(), UniPoly::var());
        assert_eq!(residue_at_infinity(&f), int(-1));
        assert_eq!(residue_at_infinity(&UniRational::from_poly(UniPoly::var())), int(0));
        let h = &inv_linear(2) * &inv_linear(5);
        let total = residue_at(&h, &int(2), 1).unwrap() + residue_at(&h, &int(5), 1).unwrap() + residue_at_infinity(&h);
        assert_eq!(total, int(0));
    }

    #[test]
    fn reduced_form() {
        let f = UniRational::new(UniPoly::from_ints(&[-1, 0, 1]), UniPoly::from_ints(&[-2, 2]));
        assert_eq!(f.den(), &UniPoly::one());
        assert_eq!(f.num(), &UniPoly::new(vec![frac(1, 2), frac(1, 2)]));
        let g = UniRational::new(UniPoly::from_ints(&[1]), UniPoly::from_ints(&[-4, 2]));
        assert_eq!(g.den(), &UniPoly::from_ints(&[-2, 1]));
        assert_eq!(g.num(), &UniPoly::constant(frac(1, 2)));
    }

    #[test]
    fn taylor_shift_matches_composition() {
        let p = UniPoly::from_ints(&[1, -2, 0, 3]);
        let a = frac(2, 3);
        let s = p.taylor_shift(&a);
        for x in [int(0), int(1), frac(-5, 7)] {
            assert_eq!(s.eval(&x), p.eval(&(&x + &a)));
        }
    }

    #[test]
    fn inverse_mod_works() {
        let m = UniPoly::from_ints(&[-2, 0, 1]);
        let a = UniPoly::from_ints(&[1, 1]);
        let inv = a.inverse_mod(&m).unwrap();
        assert_eq!((&a * &inv).divrem(&m).1, UniPoly::one());
    }

    #[test]
    fn irrational_root_residue_sum() {
        // f = 1/(μ^2 - 2): residues at ±√2 are ±1/(2√2), summing to 0.
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        let f = UniRational::new(UniPoly::one(), p.clone());
        assert_eq!(residue_sum_at_roots(&f, &p).unwrap(), int(0));
        // g = μ/(μ^2 - 2): each residue is 1/2.
        let g = UniRational::new(UniPoly::var(), p.clone());
        assert_eq!(residue_sum_at_roots(&g, &p).unwrap(), int(1));
        assert_eq!(residue_sum_at_roots(&g, &p).unwrap() + residue_at_infinity(&g), int(0));
    }
}
