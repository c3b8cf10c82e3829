//! Residues of `Υ` from truncated local expansions of its factors.
//!
//! Each factor `L_a` and `1/(μ² ∂_μ log λ)` is expanded once per pole, so a triple costs a
//! product of three or four short series instead of a Taylor shift of the assembled
//! integrand, whose degree grows with the rank.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{series_div, Rational, UniPoly};

use super::superpotential::{PoleTag, Superpotential};

/// Coefficients kept past the leading one. The pole bounds never exceed 2, so a residue
/// needs at most the second coefficient of any factor; one more is kept as slack.
const TERMS: usize = 2;

/// `Σ_{n ≥ 0} c_n z^{val + n}` truncated, with `z = μ − p` or `z = 1/μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSeries {
    pub val: i64,
    pub c: Vec<Rational>,
}

impl LocalSeries {
    fn zero() -> Self {
        LocalSeries { val: 0, c: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Expansion of `num / den` at `at` (`None` is infinity).
    pub fn of_ratio(num: &UniPoly, den: &UniPoly, at: Option<&Rational>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (n, d, shift) = match at {
            Some(p) => (num.taylor_shift(p).coeffs().to_vec(), den.taylor_shift(p).coeffs().to_vec(), 0),
            None => {
                let dn = num.degree().unwrap() as i64;
                let dd = den.degree().unwrap() as i64;
                let rev = |q: &UniPoly| q.coeffs().iter().rev().cloned().collect::<Vec<_>>();
                (rev(num), rev(den), dd - dn)
            }
        };
        let vn = n.iter().position(|x| !x.is_zero()).unwrap();
        let vd = d.iter().position(|x| !x.is_zero()).unwrap();
        let c = series_div(&n[vn..], &d[vd..], TERMS + 1);
        LocalSeries { val: shift + vn as i64 - vd as i64, c }
    }

    /// Expansion of `Σ m_s / (μ − s)` at `at`, straight from the partial fractions.
    pub fn of_simple_poles(div: &[(Rational, i64)], at: Option<&Rational>) -> Self {
        let m = |x: i64| Rational::from_integer(x.into());
        let mut c = vec![Rational::zero(); TERMS + 2];
        let val = match at {
            Some(r) => {
                // m_s / (z − (s − r)) = −m_s Σ z^n / (s − r)^{n+1}
                let mut val = 0;
                for (p, ms) in div {
                    if p == r {
                        val = -1;
                        c[0] += m(*ms);
                        continue;
                    }
                    let inv = (p - r).recip();
                    let mut pw = inv.clone();
                    for n in 0..=TERMS {
                        c[n + 1] -= m(*ms) * &pw;
                        pw *= &inv;
                    }
                }
                if val == 0 {
                    c.remove(0);
                } else {
                    c.pop();
                }
                val
            }
            None => {
                // m_s / μ · Σ (s/μ)^n
                for (p, ms) in div {
                    let mut pw = Rational::one();
                    for cn in c.iter_mut().skip(1) {
                        *cn += m(*ms) * &pw;
                        pw *= p;
                    }
                }
                c.remove(0);
                1
            }
        };
        match c.iter().position(|x| !x.is_zero()) {
            None => Self::zero(),
            Some(v) => {
                c.drain(..v);
                LocalSeries { val: val + v as i64, c }
            }
        }
    }

    fn inverse(&self) -> Self {
        LocalSeries { val: -self.val, c: series_div(&[Rational::one()], &self.c, self.c.len()) }
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let n = self.c.len().min(other.c.len());
        let c = (0..n).map(|k| (0..=k).fold(Rational::zero(), |acc, r| acc + &self.c[r] * &other.c[k - r])).collect();
        LocalSeries { val: self.val + other.val, c }
    }

    /// Coefficient of `z^e`, or `None` if the truncation does not reach it.
    pub fn coeff(&self, e: i64) -> Option<Rational> {
        if self.is_zero() || e < self.val {
            return Some(Rational::zero());
        }
        self.c.get((e - self.val) as usize).cloned()
    }
}

struct AtTag {
    tag: PoleTag,
    base: LocalSeries,
    logderivs: Vec<LocalSeries>,
}

/// Local expansions of every factor of `Υ` at every tag of a superpotential.
pub struct LocalExpansions {
    l: usize,
    weight: Rational,
    tags: Vec<AtTag>,
}

impl LocalExpansions {
    pub fn new(sp: &Superpotential) -> Self {
        let mu2 = UniPoly::monomial(Rational::one(), 2);
        let tags = sp
            .tags()
            .into_iter()
            .map(|tag| {
                let p = sp.tag_point(tag);
                AtTag {
                    tag,
                    base: LocalSeries::of_ratio(&mu2, &UniPoly::one(), p.as_ref())
                        .mul(&LocalSeries::of_simple_poles(&sp.divisor, p.as_ref()))
                        .inverse(),
                    logderivs: sp
                        .logderivs
                        .iter()
                        .map(|f| LocalSeries::of_ratio(f.num(), f.den(), p.as_ref()))
                        .collect(),
                }
            })
            .collect();
        LocalExpansions { l: sp.rank, weight: sp.weight.clone(), tags }
    }

    /// `−Res_tag` of `Υ` (or of the lemma integrand) at every tag, 0-based indices, with
    /// the pole-order bounds of `sp` enforced.
    fn contributions(&self, sp: &Superpotential, idx: [usize; 3], lemma: bool) -> Result<Vec<(PoleTag, Rational)>> {
        let w = if lemma { Rational::new(1.into(), 2.into()) } else { self.weight.clone() };
        self.tags
            .iter()
            .map(|t| {
                let factors: Vec<&LocalSeries> = std::iter::once(&t.base)
                    .chain(idx.iter().filter(|&&a| !(lemma && a == self.l)).map(|&a| &t.logderivs[a]))
                    .collect();
                if factors.iter().any(|f| f.is_zero()) {
                    return Ok((t.tag, Rational::zero()));
                }
                let val: i64 = factors.iter().map(|f| f.val).sum();
                let bound = sp.pole_bound(t.tag, idx) as i64;
                // pole order of Υ dμ; at infinity dμ = −dz/z²
                let (order, e) = match t.tag {
                    PoleTag::Infinity => (2 - val, 1),
                    _ => (-val, -1),
                };
                if order > bound {
                    return Err(Error::UnexpectedPole(format!("order {order} at {}, expected at most {bound}", t.tag)));
                }
                let need = e - val;
                if need < 0 {
                    return Ok((t.tag, Rational::zero()));
                }
                if factors.iter().any(|f| f.c.len() <= need as usize) {
                    return Err(Error::UnexpectedPole(format!(
                        "order {order} at {} beyond the local expansion",
                        t.tag
                    )));
                }
                let len = need as usize + 1;
                let mut s = LocalSeries { val: 0, c: factors[0].c[..len].to_vec() };
                for f in &factors[1..] {
                    s = s.mul(&LocalSeries { val: 0, c: f.c[..len].to_vec() });
                }
                let c = s.c[need as usize].clone();
                // −Res: at a finite point −c, at infinity Res = −c so −Res = c
                let r = match t.tag {
                    PoleTag::Infinity => c,
                    _ => -c,
                };
                Ok((t.tag, w.clone() * r))
            })
            .collect()
    }

    /// `−Σ Res Υ_{ijk}` over `supp div(λ) ∪ {∞}`, 0-based indices.
    pub fn dual_core(&self, sp: &Superpotential, idx: [usize; 3]) -> Result<Rational> {
        Ok(self.contributions(sp, idx, false)?.into_iter().fold(Rational::zero(), |a, (_, r)| a + r))
    }

    /// `R_{ijk}`, the lemma integrand's `−Σ Res`, 0-based indices.
    pub fn lemma_core(&self, sp: &Superpotential, idx: [usize; 3]) -> Result<Rational> {
        Ok(self.contributions(sp, idx, true)?.into_iter().fold(Rational::zero(), |a, (_, r)| a + r))
    }

    /// Per-pole residues of the lemma integrand, 0-based indices; pair tags are summed.
    pub fn lemma_contributions(
        &self,
        sp: &Superpotential,
        idx: [usize; 3],
        tags: &[PoleTag],
    ) -> Result<Vec<(PoleTag, Rational)>> {
        let all = self.contributions(sp, idx, true)?;
        let get = |t: PoleTag| all.iter().find(|(x, _)| *x == t).map(|(_, r)| r.clone()).unwrap_or_else(Rational::zero);
        Ok(tags
            .iter()
            .map(|&t| {
                let r = match t {
                    PoleTag::KappaPair(m) => get(PoleTag::Kappa(m)) + get(PoleTag::KappaInv(m)),
                    t => get(t),
                };
                (t, r)
            })
            .collect())
    }
}
