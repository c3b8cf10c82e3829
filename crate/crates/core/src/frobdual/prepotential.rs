//! Prepotentials polynomial in `t_1..t_l` and `e^{t_{l+1}}`, optionally with polynomial
//! dependence on `t_{l+1}` itself.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{parse_rational, pow_i, to_pq, Rational, Tensor3};
use crate::rootsys::{parse_family, Family};

/// `t^{exps} · e^{k t_{l+1}} · t_{l+1}^p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermKey {
    pub exps: Vec<u32>,
    pub k: i64,
    pub p: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prepotential {
    /// `l`; the flat coordinates are `t_1..t_{l+1}`.
    pub rank: usize,
    pub family: Option<Family>,
    pub terms: BTreeMap<TermKey, Rational>,
}

/// Flat coordinates: `t_1..t_l`, `s = e^{t_{l+1}}` and, only when some term needs it,
/// `t_{l+1}` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatPoint {
    pub t: Vec<Rational>,
    pub s: Rational,
    pub t_last: Option<Rational>,
}

impl FlatPoint {
    pub fn new(t: Vec<Rational>, s: Rational) -> Self {
        FlatPoint { t, s, t_last: None }
    }
}

fn falling(n: u32, r: u32) -> i64 {
    (0..r).map(|m| n as i64 - m as i64).product()
}

fn binom(n: u32, r: u32) -> i64 {
    (0..r).fold(1i64, |acc, m| acc * (n - m) as i64 / (m + 1) as i64)
}

impl Prepotential {
    pub fn new(rank: usize) -> Self {
        Prepotential { rank, family: None, terms: BTreeMap::new() }
    }

    pub fn nflat(&self) -> usize {
        self.rank + 1
    }

    pub fn add_term(&mut self, exps: Vec<u32>, k: i64, p: u32, c: Rational) {
        assert_eq!(exps.len(), self.rank);
        let key = TermKey { exps, k, p };
        let e = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coefficient(&self, exps: &[u32], k: i64, p: u32) -> Rational {
        self.terms.get(&TermKey { exps: exps.to_vec(), k, p }).cloned().unwrap_or_else(Rational::zero)
    }

    /// `∂F/∂t_a`, `a` 0-based over `0..=l`.
    pub fn derivative(&self, a: usize) -> Prepotential {
        let mut out = Prepotential { rank: self.rank, family: self.family, terms: BTreeMap::new() };
        for (key, c) in &self.terms {
            if a < self.rank {
                let e = key.exps[a];
                if e == 0 {
                    continue;
                }
                let mut exps = key.exps.clone();
                exps[a] -= 1;
                out.add_term(exps, key.k, key.p, c * Rational::from_integer(e.into()));
            } else {
                if key.k != 0 {
                    out.add_term(key.exps.clone(), key.k, key.p, c * Rational::from_integer(key.k.into()));
                }
                if key.p > 0 {
                    out.add_term(key.exps.clone(), key.k, key.p - 1, c * Rational::from_integer(key.p.into()));
                }
            }
        }
        out
    }

    /// The constant term if `self` has no other terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (key, c) = self.terms.iter().next().unwrap();
                (key.k == 0 && key.p == 0 && key.exps.iter().all(|&e| e == 0)).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn eval(&self, pt: &FlatPoint) -> Result<Rational> {
        let mut s = Rational::zero();
        for (key, c) in &self.terms {
            let mut v = c * pow_i(&pt.s, key.k);
            for (x, &e) in pt.t.iter().zip(&key.exps) {
                if e > 0 {
                    v *= pow_i(x, e as i64);
                }
            }
            if key.p > 0 {
                let tl = pt.t_last.as_ref().ok_or_else(|| Error::Invalid("t_{l+1} value required".into()))?;
                v *= pow_i(tl, key.p as i64);
            }
            s += v;
        }
        Ok(s)
    }

    /// `∂³F/∂t_a∂t_b∂t_c` at a point, 0-based indices.
    pub fn third_derivative(&self, a: usize, b: usize, c: usize, pt: &FlatPoint) -> Result<Rational> {
        let l = self.rank;
        let mut cnt = vec![0u32; l + 1];
        for x in [a, b, c] {
            cnt[x] += 1;
        }
        let n = cnt[l];
        let mut total = Rational::zero();
        for (key, coef) in &self.terms {
            let mut f = 1i64;
            for i in 0..l {
                f *= falling(key.exps[i], cnt[i]);
            }
            if f == 0 {
                continue;
            }
            let mut v = coef * Rational::from_integer(f.into());
            for i in 0..l {
                let e = key.exps[i] - cnt[i];
                if e > 0 {
                    v *= pow_i(&pt.t[i], e as i64);
                }
            }
            // d^n (e^{kt} t^p) = Σ_r C(n,r) k^{n−r} e^{kt} (d/dt)^r t^p
            let mut part = Rational::zero();
            for r in 0..=n.min(key.p) {
                let kk = BigInt::from(key.k).pow(n - r);
                let mut term = Rational::from_integer(kk * BigInt::from(binom(n, r) * falling(key.p, r)));
                if term.is_zero() {
                    continue;
                }
                if key.p > r {
                    let tl = pt.t_last.as_ref().ok_or_else(|| Error::Invalid("t_{l+1} value required".into()))?;
                    term *= pow_i(tl, (key.p - r) as i64);
                }
                part += term;
            }
            if part.is_zero() {
                continue;
            }
            total += v * part * pow_i(&pt.s, key.k);
        }
        Ok(total)
    }

    /// All third derivatives at a point.
    pub fn third_derivatives(&self, pt: &FlatPoint) -> Result<Tensor3> {
        let n = self.nflat();
        let mut t = Tensor3::zeros(n);
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    let v = self.third_derivative(a, b, c, pt)?;
                    for (x, y, z) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                        t.set(x, y, z, v.clone());
                    }
                }
            }
        }
        Ok(t)
    }

    /// Parse the text format: a header `prepotential <family> <rank>` and lines
    /// `e1 .. el | k [p] : coef`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out: Option<Prepotential> = None;
        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let Some(f) = out.as_mut() else {
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 3 || toks[0] != "prepotential" {
                    return Err(err("expected header `prepotential <family> <rank>`".into()));
                }
                let rank: usize = toks[2].parse().map_err(|_| err(format!("bad rank `{}`", toks[2])))?;
                let family = match parse_family(toks[1]) {
                    Ok((fam, r)) if r.is_none() || r == Some(rank) => fam,
                    _ => return Err(err(format!("bad family `{}`", toks[1]))),
                };
                out = Some(Prepotential { rank, family: Some(family), terms: BTreeMap::new() });
                continue;
            };
            let (lhs, coef) = line.split_once(':').ok_or_else(|| err("missing `:`".into()))?;
            let (exps, grading) = lhs.split_once('|').ok_or_else(|| err("missing `|`".into()))?;
            let exps: Vec<u32> = exps
                .split_whitespace()
                .map(|e| e.parse().map_err(|_| err(format!("bad exponent `{e}`"))))
                .collect::<Result<_>>()?;
            if exps.len() != f.rank {
                return Err(err(format!("expected {} exponents, found {}", f.rank, exps.len())));
            }
            let g: Vec<&str> = grading.split_whitespace().collect();
            let (k, p) = match g.as_slice() {
                [k] => (k.parse().map_err(|_| err(format!("bad exponent `{k}`")))?, 0),
                [k, p] => (
                    k.parse().map_err(|_| err(format!("bad exponent `{k}`")))?,
                    p.parse().map_err(|_| err(format!("bad power `{p}`")))?,
                ),
                _ => return Err(err("expected `k` or `k p` after `|`".into())),
            };
            let c = parse_rational(coef.trim()).map_err(|_| err(format!("bad coefficient `{}`", coef.trim())))?;
            f.add_term(exps, k, p, c);
        }
        out.ok_or_else(|| Error::Parse { line: 0, msg: "empty prepotential file".into() })
    }

    pub fn serialize(&self) -> String {
        let fam = self.family.map(|f| f.to_string()).unwrap_or_else(|| "E".into());
        let mut s = format!("prepotential {} {}\n", fam, self.rank);
        for (key, c) in &self.terms {
            let exps: Vec<String> = key.exps.iter().map(u32::to_string).collect();
            let grading = if key.p > 0 { format!("{} {}", key.k, key.p) } else { key.k.to_string() };
            let _ = writeln!(s, "{} | {} : {}", exps.join(" "), grading, to_pq(c));
        }
        s
    }
}

const E6_DATA: &str = include_str!("../../data/e6.prepotential");

/// The E6 orbit-space prepotential (marked node 3).
pub fn e6_prepotential() -> Prepotential {
    Prepotential::parse(E6_DATA).expect("embedded E6 data parses")
}
