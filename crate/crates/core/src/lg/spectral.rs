//! Characteristic polynomials of the spectral curve and the E6 pairing check.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{int, pow_i, RatMatrix, Rational, UniPoly};
use crate::invariants::{monomial, mul_dominant, orbit_sum, orbit_sums, DominantForm, EvalPoint, OrbitSumBasis};
use crate::rootsys::{Family, MarkedPair, WeightVec};

#[derive(Clone, Debug)]
pub struct SpectralData {
    pub orbit_size: usize,
    /// `𝒬(μ) = Π_{ω'} (e^{ω'} − μ)` at the point, by direct multiplication.
    pub q_poly: UniPoly,
    /// `e_k` of the orbit monomials as polynomials in the orbit sums `M_i`.
    pub elementary: Vec<BTreeMap<Vec<u32>, Rational>>,
    /// `M_i` at the point.
    pub m_values: Vec<Rational>,
    /// `s = e^{-x_{l+1}/2}`.
    pub shift: Rational,
    /// `𝒫(μ, λ)` as `λ`-degree ↦ coefficient polynomial in `μ`.
    pub p_poly: BTreeMap<usize, UniPoly>,
}

impl SpectralData {
    pub fn lambda_degree(&self) -> usize {
        self.p_poly.keys().copied().max().unwrap_or(0)
    }

    pub fn lambda_coefficient(&self, d: usize) -> UniPoly {
        self.p_poly.get(&d).cloned().unwrap_or_else(UniPoly::zero)
    }
}

fn binomial(n: u32, k: u32) -> Rational {
    let mut c = Rational::one();
    for i in 0..k {
        c = c * int((n - i) as i64) / int((i + 1) as i64);
    }
    c
}

/// Dominant forms of the elementary symmetric functions of `e^{ω'}` over the orbit.
fn elementary_dominant(mp: &MarkedPair, weight: &[i64], n: usize) -> Vec<DominantForm> {
    let rs = &mp.rs;
    let half = n / 2;
    let powers: Vec<_> =
        (1..=half.max(1)).map(|j| orbit_sum(rs, &weight.iter().map(|&a| a * j as i64).collect::<Vec<_>>())).collect();
    let mut e: Vec<DominantForm> = vec![DominantForm::from([(vec![0; rs.rank], Rational::one())])];
    for k in 1..=half {
        let mut acc = DominantForm::new();
        for j in 1..=k {
            let term = mul_dominant(rs, &e[k - j], &powers[j - 1]);
            let sign = if j % 2 == 1 { Rational::one() } else { -Rational::one() };
            for (w, c) in term {
                *acc.entry(w).or_insert_with(Rational::zero) += &sign * c;
            }
        }
        let kk = int(k as i64);
        acc.retain(|_, c| !c.is_zero());
        e.push(acc.into_iter().map(|(w, c)| (w, c / &kk)).collect());
    }
    // the orbit sums to zero, so e_n = 1 and e_{n-k}(x) = e_k(-x)
    for k in (half + 1)..=n {
        let src = &e[n - k];
        let mut f = DominantForm::new();
        for w in src.keys() {
            let neg: WeightVec = w.iter().map(|&a| -a).collect();
            f.insert(rs.to_dominant(&neg), src[w].clone());
        }
        e.push(f);
    }
    e
}

/// `𝒬` and `𝒫` for the Weyl orbit of `weight`, with `𝒫` obtained by the shift
/// `M_{k̄} ↦ M_{k̄} − λ s` of the marked orbit sum.
pub fn spectral_poly(mp: &MarkedPair, weight: &[i64], pt: &EvalPoint) -> Result<SpectralData> {
    let rs = &mp.rs;
    if !rs.is_dominant(weight) {
        return Err(Error::Invalid("spectral_poly needs a dominant weight".into()));
    }
    let orbit = rs.weyl_orbit(weight);
    let n = orbit.len();
    let mut q_poly = UniPoly::one();
    let mu = UniPoly::var();
    for w in &orbit {
        let v = monomial(w).eval(&pt.q)?;
        q_poly = &q_poly * &(&UniPoly::constant(v) - &mu);
    }
    let mut basis = OrbitSumBasis::new(rs);
    let elementary: Vec<_> = elementary_dominant(mp, weight, n).iter().map(|f| basis.decompose(f)).collect();
    let m_values = orbit_sums(rs).iter().map(|m| m.eval(&pt.q)).collect::<Result<Vec<_>>>()?;
    let shift = pt.exp_last(&Rational::new((-1).into(), 2.into()))?;
    let kb = mp.marked;
    let mut p_poly: BTreeMap<usize, UniPoly> = BTreeMap::new();
    for (k, dec) in elementary.iter().enumerate() {
        // (−μ)^{n−k}
        let sign = if (n - k).is_multiple_of(2) { Rational::one() } else { -Rational::one() };
        let mu_pow = UniPoly::monomial(sign, n - k);
        for (exps, c) in dec {
            let mut rest = c.clone();
            for (i, &a) in exps.iter().enumerate() {
                if i != kb && a > 0 {
                    rest *= pow_i(&m_values[i], a as i64);
                }
            }
            let a = exps[kb];
            for d in 0..=a {
                // binomial(a, d) M^{a−d} (−λ s)^d
                let coef = &rest * binomial(a, d) * pow_i(&m_values[kb], (a - d) as i64) * pow_i(&-&shift, d as i64);
                if coef.is_zero() {
                    continue;
                }
                let entry = p_poly.entry(d as usize).or_insert_with(UniPoly::zero);
                *entry = &*entry + &mu_pow.scale(&coef);
            }
        }
    }
    p_poly.retain(|_, p| !p.is_zero());
    Ok(SpectralData { orbit_size: n, q_poly, elementary, m_values, shift, p_poly })
}

/// The representation weight used for each family's spectral curve.
pub fn default_spectral_weight(mp: &MarkedPair) -> WeightVec {
    mp.rs.fundamental_weight(0)
}

/// `Σ_{ω' ∈ W·ω_1} <ω', α_i^∨><ω', α_j^∨>` for E6.
pub fn e6_pairing_matrix() -> Result<RatMatrix> {
    let mp = MarkedPair::standard(Family::E, 6)?;
    let orbit = mp.rs.weyl_orbit(&mp.rs.fundamental_weight(0));
    Ok(RatMatrix::from_fn(6, 6, |i, j| orbit.iter().fold(Rational::zero(), |acc, w| acc + int(w[i] * w[j]))))
}

/// `η♭ = −(1/6) Σ_{Γ_1} <ω',α_i><ω',α_j>` from the E6 spectral curve.
pub fn e6_lg_eta() -> Result<RatMatrix> {
    let m = e6_pairing_matrix()?;
    let s = Rational::new((-1).into(), 6.into());
    Ok(RatMatrix::from_fn(6, 6, |i, j| &m[(i, j)] * &s))
}

/// Dominant-form cross-check helper: `Σ_n c_n Π M_i^{n_i}` at the point.
pub fn eval_in_orbit_sums(dec: &BTreeMap<Vec<u32>, Rational>, m_values: &[Rational]) -> Rational {
    dec.iter().fold(Rational::zero(), |acc, (n, c)| {
        acc + n.iter().zip(m_values).fold(c.clone(), |p, (&a, m)| p * pow_i(m, a as i64))
    })
}

/// Dominant part of `e_k` for direct inspection.
pub fn elementary_symmetric_dominant(mp: &MarkedPair, weight: &[i64]) -> Vec<DominantForm> {
    let n = mp.rs.orbit_size(weight);
    elementary_dominant(mp, weight, n)
}
