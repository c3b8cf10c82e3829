//! Residue sums for the dual metric and product of a rational LG model.
//!
//! The integrand `Υ_{ijk} = w · L_i L_j L_k / (μ² ∂_μ log λ)` is what remains of
//! `δ_iλ δ_jλ δ_kλ φ² / (λ² dλ)` once every `δλ` is written as `λ · L`. Its poles away from
//! the critical points of `λ` sit on `supp div(λ) ∪ {∞}`, and the dual structure constants are
//! minus the residue sum over those points. Public indices are 1-based.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::{
    coprime, residue_at, residue_at_infinity, residue_sum_at_roots, RatMatrix, Rational, Tensor3, UniPoly, UniRational,
};

use super::local::LocalExpansions;
use super::superpotential::{PoleTag, Superpotential};

fn check_indices(sp: &Superpotential, idx: &[usize]) -> Result<()> {
    if idx.iter().any(|&a| a == 0 || a > sp.rank + 1) {
        return Err(Error::Invalid(format!("indices must lie in 1..={}", sp.rank + 1)));
    }
    Ok(())
}

/// `Υ` with 0-based indices. `lemma` selects `L_{l+1} = 1` and the weight `1/2`.
fn integrand0(sp: &Superpotential, idx: [usize; 3], lemma: bool) -> UniRational {
    let l = sp.rank;
    let factor = |a: usize| {
        if lemma && a == l {
            UniRational::constant(Rational::one())
        } else {
            sp.logderivs[a].clone()
        }
    };
    let w = if lemma { Rational::new(1.into(), 2.into()) } else { sp.weight.clone() };
    let mut num = sp.dlog.den().scale(&w);
    let mut den = &sp.dlog.num().clone() * &UniPoly::monomial(Rational::one(), 2);
    for &a in &idx {
        let f = factor(a);
        num = &num * f.num();
        den = &den * f.den();
    }
    UniRational::with_known_cancellations(num, den, &sp.finite_support())
}

/// The weighted integrand `Υ_{ijk}` in log-κ coordinates, `l+1` being `x_{l+1}`.
pub fn upsilon(sp: &Superpotential, i: usize, j: usize, k: usize) -> Result<UniRational> {
    check_indices(sp, &[i, j, k])?;
    Ok(integrand0(sp, [i - 1, j - 1, k - 1], false))
}

/// The unweighted integrand `L_i L_j L_k / (2 μ² ∂_μ log λ)` of the pole-by-pole lemma,
/// with `L_{l+1} = 1`.
pub fn lemma_integrand(sp: &Superpotential, i: usize, j: usize, k: usize) -> Result<UniRational> {
    check_indices(sp, &[i, j, k])?;
    Ok(integrand0(sp, [i - 1, j - 1, k - 1], true))
}

fn residue_tag(sp: &Superpotential, f: &UniRational, tag: PoleTag, bound: usize) -> Result<Rational> {
    let exceeded = |order: usize| Error::UnexpectedPole(format!("order {order} at {tag}, expected at most {bound}"));
    match tag {
        PoleTag::Infinity => {
            let order = f.pole_order_at_infinity();
            if order > bound {
                return Err(exceeded(order));
            }
            Ok(residue_at_infinity(f))
        }
        PoleTag::KappaPair(m) => {
            Ok(residue_tag(sp, f, PoleTag::Kappa(m), bound)? + residue_tag(sp, f, PoleTag::KappaInv(m), bound)?)
        }
        _ => {
            let p = sp.tag_point(tag).expect("finite tag");
            residue_at(f, &p, bound).map_err(|e| match e {
                Error::PoleOrderExceeded => exceeded(f.pole_order(&p)),
                e => e,
            })
        }
    }
}

/// `R^{[tag]}_{ijk} = -Res_{tag} L_i L_j L_k / (2 μ² ∂_μ log λ)`.
pub fn per_pole_contribution(sp: &Superpotential, i: usize, j: usize, k: usize, tag: PoleTag) -> Result<Rational> {
    Ok(per_pole_contributions(sp, i, j, k, &[tag])?.remove(0).1)
}

/// [`per_pole_contribution`] for several tags, sharing one integrand.
pub fn per_pole_contributions(
    sp: &Superpotential,
    i: usize,
    j: usize,
    k: usize,
    tags: &[PoleTag],
) -> Result<Vec<(PoleTag, Rational)>> {
    check_indices(sp, &[i, j, k])?;
    LocalExpansions::new(sp).lemma_contributions(sp, [i - 1, j - 1, k - 1], tags)
}

/// [`per_pole_contributions`] from residues of the assembled [`lemma_integrand`].
pub fn per_pole_contributions_assembled(
    sp: &Superpotential,
    i: usize,
    j: usize,
    k: usize,
    tags: &[PoleTag],
) -> Result<Vec<(PoleTag, Rational)>> {
    let f = lemma_integrand(sp, i, j, k)?;
    let idx = [i - 1, j - 1, k - 1];
    tags.iter().map(|&t| Ok((t, -residue_tag(sp, &f, t, sp.pole_bound(t, idx))?))).collect()
}

/// `R_{ijk}`: the sum of [`per_pole_contribution`] over all tags.
pub fn lemma_core(sp: &Superpotential, i: usize, j: usize, k: usize) -> Result<Rational> {
    check_indices(sp, &[i, j, k])?;
    LocalExpansions::new(sp).lemma_core(sp, [i - 1, j - 1, k - 1])
}

fn assembled_core0(sp: &Superpotential, idx: [usize; 3]) -> Result<Rational> {
    let f = integrand0(sp, idx, false);
    let mut s = Rational::zero();
    for t in sp.tags() {
        s -= residue_tag(sp, &f, t, sp.pole_bound(t, idx))?;
    }
    Ok(s)
}

/// Dual structure constant in log-κ coordinates (and `x_{l+1}`).
pub fn dual_core(sp: &Superpotential, i: usize, j: usize, k: usize) -> Result<Rational> {
    check_indices(sp, &[i, j, k])?;
    LocalExpansions::new(sp).dual_core(sp, [i - 1, j - 1, k - 1])
}

/// [`dual_core`] from residues of the fully assembled integrand [`upsilon`].
pub fn dual_core_assembled(sp: &Superpotential, i: usize, j: usize, k: usize) -> Result<Rational> {
    check_indices(sp, &[i, j, k])?;
    assembled_core0(sp, [i - 1, j - 1, k - 1])
}

/// Sum of residues of `f` over the critical points of `λ`, by the trace formula.
pub fn critical_residue_sum(sp: &Superpotential, f: &UniRational) -> Result<Rational> {
    let crit = sp.critical_polynomial();
    let p = match f.den().divrem(&crit) {
        (_, r) if r.is_zero() => crit,
        _ => f.den().gcd(&crit),
    };
    let (rest, _) = f.den().divrem(&p);
    if !coprime(&p, &p.derivative()) || !coprime(&rest, &p) {
        return Err(Error::DegeneratePoint);
    }
    residue_sum_at_roots(f, &p)
}

/// All residues of one integrand, split by location.
#[derive(Clone, Debug)]
pub struct ResidueBudget {
    pub support: Vec<(PoleTag, Rational)>,
    pub infinity: Rational,
    pub critical: Rational,
}

impl ResidueBudget {
    /// Zero by the global residue theorem.
    pub fn total(&self) -> Rational {
        self.support.iter().fold(self.infinity.clone() + &self.critical, |acc, (_, r)| acc + r)
    }
}

pub fn residue_budget(sp: &Superpotential, f: &UniRational) -> Result<ResidueBudget> {
    let mut support = Vec::new();
    for t in sp.tags() {
        if let Some(p) = sp.tag_point(t) {
            support.push((t, residue_at(f, &p, f.pole_order(&p))?));
        }
    }
    Ok(ResidueBudget { support, infinity: residue_at_infinity(f), critical: critical_residue_sum(sp, f)? })
}

/// `(tag, actual order, bound)` for the weighted integrand at every tag.
pub fn pole_orders(sp: &Superpotential, i: usize, j: usize, k: usize) -> Result<Vec<(PoleTag, usize, usize)>> {
    let f = upsilon(sp, i, j, k)?;
    let idx = [i - 1, j - 1, k - 1];
    Ok(sp
        .tags()
        .into_iter()
        .map(|t| {
            let order = match sp.tag_point(t) {
                Some(p) => f.pole_order(&p),
                None => f.pole_order_at_infinity(),
            };
            (t, order, sp.pole_bound(t, idx))
        })
        .collect())
}

fn sorted_triples(n: usize) -> Vec<[usize; 3]> {
    let mut v = Vec::new();
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                v.push([a, b, c]);
            }
        }
    }
    v
}

fn symmetric_fill(n: usize, entries: Vec<([usize; 3], Rational)>) -> Tensor3 {
    let mut t = Tensor3::zeros(n);
    for ([a, b, c], v) in entries {
        for (x, y, z) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
            t.set(x, y, z, v.clone());
        }
    }
    t
}

/// All dual structure constants in log-κ coordinates.
pub fn lg_dual_core_tensor(sp: &Superpotential) -> Result<Tensor3> {
    let n = sp.rank + 1;
    let loc = LocalExpansions::new(sp);
    let entries = sorted_triples(n)
        .into_par_iter()
        .map(|idx| loc.dual_core(sp, idx).map(|v| (idx, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(symmetric_fill(n, entries))
}

/// All dual structure constants in the coordinates `x_1..x_{l+1}`.
pub fn lg_dual_tensor(sp: &Superpotential) -> Result<Tensor3> {
    let t = sp.to_x.transpose();
    Ok(lg_dual_core_tensor(sp)?.transform(&t, &t, &t))
}

fn column(sp: &Superpotential, a: usize) -> Vec<(usize, Rational)> {
    (0..=sp.rank)
        .filter_map(|i| {
            let v = &sp.to_x[(i, a)];
            (!v.is_zero()).then(|| (i, v.clone()))
        })
        .collect()
}

/// `c♭(∂_{x_a}, ∂_{x_b}, ∂_{x_c})`.
pub fn lg_dual_triple(sp: &Superpotential, a: usize, b: usize, c: usize) -> Result<Rational> {
    check_indices(sp, &[a, b, c])?;
    let (ca, cb, cc) = (column(sp, a - 1), column(sp, b - 1), column(sp, c - 1));
    let loc = LocalExpansions::new(sp);
    let mut s = Rational::zero();
    for (i, x) in &ca {
        for (j, y) in &cb {
            for (k, z) in &cc {
                let mut idx = [*i, *j, *k];
                idx.sort_unstable();
                s += x * y * z * loc.dual_core(sp, idx)?;
            }
        }
    }
    Ok(s)
}

/// `η♭(∂_{x_a}, ∂_{x_b})`, the triple with one slot along `x_{l+1}`.
pub fn lg_dual_eta(sp: &Superpotential, a: usize, b: usize) -> Result<Rational> {
    lg_dual_triple(sp, a, b, sp.rank + 1)
}

pub fn lg_dual_eta_matrix(sp: &Superpotential) -> Result<RatMatrix> {
    let n = sp.rank + 1;
    let l = sp.rank;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let loc = LocalExpansions::new(sp);
    let core = pairs.par_iter().map(|&(a, b)| loc.dual_core(sp, [a, b, l])).collect::<Result<Vec<_>>>()?;
    let mut c = RatMatrix::zeros(n, n);
    for ((a, b), v) in pairs.into_iter().zip(core) {
        c[(a, b)] = v.clone();
        c[(b, a)] = v;
    }
    // the x_{l+1} column of to_x has a single entry 1 in row l+1
    let t = &sp.to_x;
    Ok(&(&t.transpose() * &c) * t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{frac, int};
    use crate::rootsys::{Family, MarkedPair};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn d(l: usize, nu: Rational) -> Superpotential {
        let mp = MarkedPair::standard(Family::D, l).unwrap();
        Superpotential::build(&mp, &ints(&[2, 3, 5, 7, 11, 13, 17, 19][..l]), &nu).unwrap()
    }

    #[test]
    fn d4_eta() {
        let sp = d(4, int(1));
        assert_eq!(lg_dual_eta(&sp, 5, 5).unwrap(), frac(1, 8));
        assert_eq!(lg_dual_eta(&sp, 2, 3).unwrap(), int(1));
        assert_eq!(lg_dual_eta(&sp, 2, 2).unwrap(), int(-2));
        assert_eq!(lg_dual_eta(&sp, 1, 3).unwrap(), int(0));
    }

    #[test]
    fn eta_scales_with_nu() {
        let sp = d(5, frac(2, 3));
        // 1/(4 ν² (l-2))
        assert_eq!(lg_dual_eta(&sp, 6, 6).unwrap(), frac(9, 48));
        assert_eq!(lg_dual_eta(&sp, 3, 4).unwrap(), int(1));
    }

    #[test]
    fn lemma_poles_at_zero_and_infinity() {
        let sp = d(5, int(1));
        assert_eq!(per_pole_contribution(&sp, 6, 6, 6, PoleTag::Zero).unwrap(), frac(1, 6));
        assert_eq!(per_pole_contribution(&sp, 6, 6, 6, PoleTag::Infinity).unwrap(), frac(1, 6));
        assert_eq!(per_pole_contribution(&sp, 1, 6, 6, PoleTag::Zero).unwrap(), int(0));
    }

    #[test]
    fn matrix_matches_entries() {
        let sp = d(4, int(1));
        let m = lg_dual_eta_matrix(&sp).unwrap();
        for a in 1..=5 {
            for b in 1..=5 {
                assert_eq!(m[(a - 1, b - 1)], lg_dual_eta(&sp, a, b).unwrap());
            }
        }
    }

    #[test]
    fn residue_theorem_on_integrands() {
        let sp = d(4, int(1));
        for (i, j, k) in [(1, 1, 1), (1, 2, 5), (5, 5, 5), (3, 3, 4)] {
            let b = residue_budget(&sp, &upsilon(&sp, i, j, k).unwrap()).unwrap();
            assert!(b.total().is_zero());
        }
    }

    #[test]
    fn local_and_assembled_residues_agree() {
        for (fam, l, kbar) in [(Family::D, 5, None), (Family::A, 3, Some(2))] {
            let mp = MarkedPair::new(fam, l, kbar).unwrap();
            let q: Vec<Rational> = [3, 5, 7, 11, 13][..l].iter().map(|&x| Rational::new(x.into(), 2.into())).collect();
            let sp = Superpotential::from_point(&mp, &q, &Rational::new(2.into(), 3.into())).unwrap();
            for idx in sorted_triples(l + 1) {
                let [i, j, k] = idx.map(|a| a + 1);
                assert_eq!(
                    dual_core(&sp, i, j, k).unwrap(),
                    dual_core_assembled(&sp, i, j, k).unwrap(),
                    "{fam}{l} ({i},{j},{k})"
                );
            }
        }
    }

    #[test]
    fn local_and_assembled_lemma_residues_agree() {
        let sp = d(5, int(1));
        let tags = crate::lg::lemma_tags(&sp);
        for idx in sorted_triples(6) {
            let [i, j, k] = idx.map(|a| a + 1);
            assert_eq!(
                per_pole_contributions(&sp, i, j, k, &tags).unwrap(),
                per_pole_contributions_assembled(&sp, i, j, k, &tags).unwrap()
            );
        }
    }
}
