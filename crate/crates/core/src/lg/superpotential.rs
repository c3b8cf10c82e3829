//! Rational superpotentials of the A and D relativistic Toda chains.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{pow_i, RatMatrix, Rational, UniPoly, UniRational};
use crate::rootsys::{dtype_g, Family, MarkedPair};

/// A point in the support of `div(λ)`, or infinity. `m` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PoleTag {
    Zero,
    Infinity,
    One,
    MinusOne,
    Kappa(usize),
    KappaInv(usize),
    /// `κ_m` and `κ_m^{-1}` together.
    KappaPair(usize),
}

impl fmt::Display for PoleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PoleTag::Zero => write!(f, "0"),
            PoleTag::Infinity => write!(f, "inf"),
            PoleTag::One => write!(f, "+1"),
            PoleTag::MinusOne => write!(f, "-1"),
            PoleTag::Kappa(m) => write!(f, "kappa{m}"),
            PoleTag::KappaInv(m) => write!(f, "1/kappa{m}"),
            PoleTag::KappaPair(m) => write!(f, "kappa{m}^(+-1)"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Superpotential {
    pub family: Family,
    pub rank: usize,
    /// 1-based marked node.
    pub kbar: usize,
    pub nu: Rational,
    pub kappa: Vec<Rational>,
    /// Constant in front of the rational part of `lam`.
    pub overall: Rational,
    pub lam: UniRational,
    /// `∂_μ log λ`.
    pub dlog: UniRational,
    /// `∂ log λ` along `log κ_1 .. log κ_l` and then `x_{l+1}`.
    pub logderivs: Vec<UniRational>,
    /// Primitive-form weight: `ν` for D, `ν_1+ν_2 = ν(l+1)` for A.
    pub weight: Rational,
    /// `to_x[(i, a)] = ∂(log κ_i)/∂x_a`, with `to_x[(l, l)] = 1`.
    pub to_x: RatMatrix,
    /// `div(λ)` as `(point, multiplicity)`.
    pub divisor: Vec<(Rational, i64)>,
}

fn ri(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Exponents `∂ log κ_j / ∂ x_a` for `A_l` at marked node `k̄`: `-Σ_{i≥j} C_ai`.
pub fn atype_kappa_exponents(mp: &MarkedPair) -> Vec<Vec<i64>> {
    let l = mp.rank();
    (0..l).map(|j| (0..l).map(|a| -(j..l).map(|i| mp.rs.c(a, i)).sum::<i64>()).collect()).collect()
}

/// `κ` at the point `q_a = e^{x_a}`.
pub fn kappa_from_q(mp: &MarkedPair, q: &[Rational]) -> Result<Vec<Rational>> {
    let exps = match mp.family() {
        Family::D => dtype_g(mp.rank()),
        Family::A => atype_kappa_exponents(mp),
        Family::E => return Err(Error::Unsupported("rational superpotential for type E".into())),
    };
    if q.iter().any(Zero::is_zero) {
        return Err(Error::ZeroCoordinate);
    }
    Ok(exps
        .iter()
        .map(|row| row.iter().zip(q).fold(Rational::one(), |acc, (&e, x)| if e == 0 { acc } else { acc * pow_i(x, e) }))
        .collect())
}

fn check_generic(family: Family, kappa: &[Rational]) -> Result<()> {
    let one = Rational::one();
    let mut pts: Vec<Rational> = Vec::new();
    for k in kappa {
        if k.is_zero() || k.is_one() || (family == Family::D && *k == -one.clone()) {
            return Err(Error::NonGenericKappa);
        }
        match family {
            Family::D => {
                pts.push(k.clone());
                pts.push(k.recip());
            }
            _ => pts.push(k.recip()),
        }
    }
    let mut sorted = pts.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != pts.len() {
        return Err(Error::NonGenericKappa);
    }
    Ok(())
}

/// `Σ m_r / (μ − r)`: the logarithmic derivative of a function with divisor `Σ m_r [r]`.
fn divisor_log_derivative(div: &[(Rational, i64)]) -> UniRational {
    let lin = |r: &Rational| UniPoly::linear_root(r);
    let den = div.iter().fold(UniPoly::one(), |acc, (r, _)| &acc * &lin(r));
    let mut num = UniPoly::zero();
    for (r, m) in div {
        num = &num + &den.divrem(&lin(r)).0.scale(&ri(*m));
    }
    UniRational::with_known_cancellations(num, den, &[])
}

fn simple(c: Rational, r: &Rational) -> UniRational {
    UniRational::simple_pole(c, r)
}

impl Superpotential {
    pub fn build(mp: &MarkedPair, kappa: &[Rational], nu: &Rational) -> Result<Self> {
        let l = mp.rank();
        if kappa.len() != l {
            return Err(Error::Invalid(format!("expected {l} kappa values, got {}", kappa.len())));
        }
        if nu.is_zero() {
            return Err(Error::Invalid("nu must be nonzero".into()));
        }
        match mp.family() {
            Family::D => {
                if mp.marked + 3 != l {
                    return Err(Error::Unsupported("type D needs the trivalent marked node".into()));
                }
                Self::build_d(mp, kappa, nu)
            }
            Family::A => Self::build_a(mp, kappa, nu),
            Family::E => Err(Error::Unsupported("rational superpotential for type E".into())),
        }
    }

    pub fn from_point(mp: &MarkedPair, q: &[Rational], nu: &Rational) -> Result<Self> {
        Self::build(mp, &kappa_from_q(mp, q)?, nu)
    }

    fn build_d(mp: &MarkedPair, kappa: &[Rational], nu: &Rational) -> Result<Self> {
        check_generic(Family::D, kappa)?;
        let l = mp.rank();
        let mu = UniPoly::var();
        let mut num = UniPoly::one();
        for k in kappa {
            num = &num * &(&mu - &UniPoly::constant(k.clone()));
            num = &num * &(&mu - &UniPoly::constant(k.recip()));
        }
        let m2 = &(&mu * &mu) - &UniPoly::one();
        let den = &UniPoly::monomial(Rational::one(), l - 2) * &(&m2 * &m2);
        // generic κ keeps the zeros off 0 and ±1
        let lam = UniRational::with_known_cancellations(num, den, &[]);
        let mut div = vec![(Rational::zero(), -(l as i64 - 2)), (Rational::one(), -2), (-Rational::one(), -2)];
        for k in kappa {
            div.push((k.clone(), 1));
            div.push((k.recip(), 1));
        }
        let mut logderivs: Vec<UniRational> =
            kappa.iter().map(|k| &simple(-k.clone(), k) + &simple(k.recip(), &k.recip())).collect();
        logderivs.push(UniRational::constant((ri(2) * nu).recip()));
        let g = dtype_g(l);
        let to_x = RatMatrix::from_fn(l + 1, l + 1, |i, a| {
            if i < l && a < l {
                ri(g[i][a])
            } else if i == l && a == l {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        Ok(Superpotential {
            family: Family::D,
            rank: l,
            kbar: mp.marked + 1,
            nu: nu.clone(),
            kappa: kappa.to_vec(),
            overall: Rational::one(),
            dlog: divisor_log_derivative(&div),
            divisor: div,
            lam,
            logderivs,
            weight: nu.clone(),
            to_x,
        })
    }

    fn build_a(mp: &MarkedPair, kappa: &[Rational], nu: &Rational) -> Result<Self> {
        check_generic(Family::A, kappa)?;
        let l = mp.rank();
        let kbar = mp.marked + 1;
        let n1 = (l + 1 - kbar) as i64;
        let q = UniPoly::var();
        let mut num = &UniPoly::one() - &q;
        for k in kappa {
            num = &num * &(&UniPoly::one() - &q.scale(k));
        }
        let overall = if n1 % 2 == 0 { Rational::one() } else { -Rational::one() };
        let lam = UniRational::with_known_cancellations(
            num.scale(&overall),
            UniPoly::monomial(Rational::one(), n1 as usize),
            &[],
        );
        let mut div = vec![(Rational::zero(), -n1), (Rational::one(), 1)];
        div.extend(kappa.iter().map(|k| (k.recip(), 1)));
        let shift = -ri(n1) / ri(l as i64 + 1);
        let mut logderivs: Vec<UniRational> = kappa
            .iter()
            .map(|k| {
                let kq = UniRational::new(q.scale(&-k.clone()), &UniPoly::one() - &q.scale(k));
                &kq + &UniRational::constant(shift.clone())
            })
            .collect();
        logderivs.push(UniRational::constant((nu * ri(l as i64 + 1)).recip()));
        let dk = atype_kappa_exponents(mp);
        let to_x = RatMatrix::from_fn(l + 1, l + 1, |i, a| {
            if i < l && a < l {
                ri(dk[i][a])
            } else if i == l && a == l {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        Ok(Superpotential {
            family: Family::A,
            rank: l,
            kbar,
            nu: nu.clone(),
            kappa: kappa.to_vec(),
            overall,
            dlog: divisor_log_derivative(&div),
            divisor: div,
            lam,
            logderivs,
            weight: nu * ri(l as i64 + 1),
            to_x,
        })
    }

    /// The same superpotential with `λ` multiplied by a nonzero constant.
    pub fn rescaled(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        out.overall = &out.overall * c;
        out.lam = out.lam.scale(c);
        out.dlog = &out.lam.derivative() * &out.lam.recip();
        out
    }

    /// Tags for every point of `supp div(λ)` plus infinity.
    pub fn tags(&self) -> Vec<PoleTag> {
        let l = self.rank;
        let mut t = vec![PoleTag::Zero, PoleTag::One];
        match self.family {
            Family::D => {
                t.push(PoleTag::MinusOne);
                for m in 1..=l {
                    t.push(PoleTag::Kappa(m));
                    t.push(PoleTag::KappaInv(m));
                }
            }
            _ => t.extend((1..=l).map(PoleTag::KappaInv)),
        }
        t.push(PoleTag::Infinity);
        t
    }

    /// Location of a tag; `None` for infinity and pair tags.
    pub fn tag_point(&self, tag: PoleTag) -> Option<Rational> {
        match tag {
            PoleTag::Zero => Some(Rational::zero()),
            PoleTag::One => Some(Rational::one()),
            PoleTag::MinusOne => Some(-Rational::one()),
            PoleTag::Kappa(m) => Some(self.kappa[m - 1].clone()),
            PoleTag::KappaInv(m) => Some(self.kappa[m - 1].recip()),
            PoleTag::Infinity | PoleTag::KappaPair(_) => None,
        }
    }

    /// Finite points of `supp div(λ)`.
    pub fn finite_support(&self) -> Vec<Rational> {
        self.tags().into_iter().filter_map(|t| self.tag_point(t)).collect()
    }

    /// Upper bound on the pole order of the integrand `Υ_{ijk}` at a tag (0-based indices).
    pub fn pole_bound(&self, tag: PoleTag, idx: [usize; 3]) -> usize {
        let l = self.rank;
        let extra = idx.iter().filter(|&&a| a == l).count();
        match (self.family, tag) {
            (_, PoleTag::Kappa(_) | PoleTag::KappaInv(_) | PoleTag::KappaPair(_)) => 2usize.saturating_sub(extra),
            (_, PoleTag::One | PoleTag::MinusOne) => 0,
            (Family::D, PoleTag::Zero | PoleTag::Infinity) => usize::from(extra == 3),
            (_, PoleTag::Zero | PoleTag::Infinity) => 1,
        }
    }

    /// Numerator of `∂_μ log λ`, whose roots are the critical points of `λ`.
    pub fn critical_polynomial(&self) -> UniPoly {
        self.dlog.num().monic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{frac, int};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn d4_divisor_shape() {
        let mp = MarkedPair::standard(Family::D, 4).unwrap();
        let sp = Superpotential::build(&mp, &ints(&[2, 3, 5, 7]), &int(1)).unwrap();
        assert_eq!(sp.lam.num().degree(), Some(8));
        assert_eq!(sp.lam.den(), &UniPoly::from_ints(&[0, 0, 1, 0, -2, 0, 1]));
    }

    #[test]
    fn a_vanishes_at_one() {
        for k in 1..=3 {
            let mp = MarkedPair::new(Family::A, 3, Some(k)).unwrap();
            let sp = Superpotential::build(&mp, &ints(&[2, 3, 5]), &int(1)).unwrap();
            assert_eq!(sp.lam.eval(&int(1)), Some(int(0)));
            assert_eq!(sp.lam.pole_order(&int(0)), 4 - k);
        }
    }

    #[test]
    fn d_logderiv_matches_displayed_factor() {
        let mp = MarkedPair::standard(Family::D, 4).unwrap();
        let sp = Superpotential::build(&mp, &ints(&[2, 3, 5, 7]), &frac(1, 3)).unwrap();
        // -κ/(μ-κ) + κ^{-1}/(μ-κ^{-1}) at μ = 4, κ = 3
        assert_eq!(sp.logderivs[1].eval(&int(4)), Some(int(-3) + frac(1, 3) / (int(4) - frac(1, 3))));
        assert_eq!(sp.logderivs[4], UniRational::constant(frac(3, 2)));
    }

    #[test]
    fn genericity() {
        let mp = MarkedPair::standard(Family::D, 4).unwrap();
        for bad in [[2, 2, 3, 5], [1, 2, 3, 5], [-1, 2, 3, 5]] {
            assert_eq!(Superpotential::build(&mp, &ints(&bad), &int(1)).err(), Some(Error::NonGenericKappa));
        }
        let inv = vec![int(2), frac(1, 2), int(3), int(5)];
        assert_eq!(Superpotential::build(&mp, &inv, &int(1)).err(), Some(Error::NonGenericKappa));
    }

    #[test]
    fn d_kappa_from_q() {
        let mp = MarkedPair::standard(Family::D, 4).unwrap();
        let k = kappa_from_q(&mp, &ints(&[2, 3, 5, 7])).unwrap();
        // rows of G: e1, e2-e1, e3-e2+e4, e4-e3 in q-exponents
        assert_eq!(k, vec![int(2), frac(3, 2), frac(35, 3), frac(7, 5)]);
    }

    #[test]
    fn log_derivative_from_divisor() {
        for (fam, l, kbar) in [(Family::D, 5, None), (Family::A, 4, Some(3))] {
            let mp = MarkedPair::new(fam, l, kbar).unwrap();
            let q: Vec<Rational> = [3, 5, 7, 11, 13][..l].iter().map(|&x| Rational::new(x.into(), 2.into())).collect();
            let sp = Superpotential::from_point(&mp, &q, &Rational::one()).unwrap();
            assert_eq!(sp.dlog, &sp.lam.derivative() * &sp.lam.recip());
        }
    }
}
