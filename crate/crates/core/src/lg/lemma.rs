//! Closed forms for the single-pole residues `R^{[q]}_{ijk}` of the D-type integrand.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::rootsys::Family;

use super::superpotential::{PoleTag, Superpotential};

/// `p_{ij} = κ_i(κ_j² − 1) / ((κ_i − κ_j)(κ_i κ_j − 1))`, 1-based.
pub fn lemma_p(kappa: &[Rational], i: usize, j: usize) -> Rational {
    let (a, b) = (&kappa[i - 1], &kappa[j - 1]);
    let one = Rational::one();
    a * (b * b - &one) / ((a - b) * (a * b - one))
}

/// `q_k = Σ_{n≠k} κ_n(1 − κ_k²) / ((κ_k − κ_n)(κ_k κ_n − 1))`, 1-based.
pub fn lemma_q(kappa: &[Rational], k: usize) -> Rational {
    let one = Rational::one();
    let kk = &kappa[k - 1];
    kappa
        .iter()
        .enumerate()
        .filter(|(n, _)| n + 1 != k)
        .fold(Rational::zero(), |acc, (_, kn)| acc + kn * (&one - kk * kk) / ((kk - kn) * (kk * kn - &one)))
}

fn delta(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

/// Closed form of `R^{[tag]}_{ijk}` (1-based, `l+1` meaning `log κ_{l+1}`).
/// Single `κ_m` or `κ_m^{-1}` tags have no separate closed form; use [`PoleTag::KappaPair`].
pub fn lemma_closed_form(sp: &Superpotential, i: usize, j: usize, k: usize, tag: PoleTag) -> Result<Rational> {
    if sp.family != Family::D {
        return Err(Error::Unsupported("closed forms exist for type D only".into()));
    }
    let l = sp.rank;
    let e = l + 1;
    match tag {
        PoleTag::One | PoleTag::MinusOne => Ok(Rational::zero()),
        PoleTag::Zero | PoleTag::Infinity => Ok(if i == e && j == e && k == e {
            Rational::new(1.into(), (2 * (l as i64 - 2)).into())
        } else {
            Rational::zero()
        }),
        PoleTag::KappaPair(m) => {
            let (dij, djk, dik) = (delta(i, m) * delta(j, m), delta(j, m) * delta(k, m), delta(i, m) * delta(k, m));
            let pre = dij + djk + dik;
            if pre == 0 {
                return Ok(Rational::zero());
            }
            let pre_r = Rational::from_integer(pre.into());
            if i == j && j == k {
                return Ok(pre_r * lemma_q(&sp.kappa, i) / Rational::from_integer(3.into()));
            }
            let ext = dij * delta(k, e) + djk * delta(i, e) + dik * delta(j, e);
            if ext != 0 {
                return Ok(-pre_r * Rational::from_integer(ext.into()));
            }
            let mut s = Rational::zero();
            if dij != 0 {
                s += lemma_p(&sp.kappa, m, k);
            }
            if dik != 0 {
                s += lemma_p(&sp.kappa, m, j);
            }
            if djk != 0 {
                s += lemma_p(&sp.kappa, m, i);
            }
            Ok(pre_r * s)
        }
        PoleTag::Kappa(_) | PoleTag::KappaInv(_) => {
            Err(Error::Unsupported("closed forms are stated for the pair κ_m, κ_m^{-1}".into()))
        }
    }
}

/// The tags over which the closed forms partition the residue sum.
pub fn lemma_tags(sp: &Superpotential) -> Vec<PoleTag> {
    let mut t = vec![PoleTag::Zero, PoleTag::Infinity, PoleTag::One, PoleTag::MinusOne];
    t.extend((1..=sp.rank).map(PoleTag::KappaPair));
    t
}
