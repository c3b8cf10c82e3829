//! Closed-form equivariant Gromov-Witten structure constants of the ADE resolution.
//!
//! Indices are 1-based; index `l+1` is the extra direction `x_{l+1}`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{pow_i, RatMatrix, Rational, Tensor3};
use crate::invariants::{monomial, EvalPoint};
use crate::rootsys::{dtype_theta, Family, MarkedPair};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Torus {
    One {
        nu: Rational,
    },
    /// Type A only.
    Two {
        nu1: Rational,
        nu2: Rational,
    },
}

#[derive(Clone, Debug)]
pub struct GwContext {
    pub mp: MarkedPair,
    pub torus: Torus,
}

impl GwContext {
    /// One-dimensional torus at `ν = 1`.
    pub fn one_torus(mp: &MarkedPair) -> Self {
        Self::with_nu(mp, Rational::one())
    }

    pub fn with_nu(mp: &MarkedPair, nu: Rational) -> Self {
        GwContext { mp: mp.clone(), torus: Torus::One { nu } }
    }

    pub fn two_torus(mp: &MarkedPair, nu1: Rational, nu2: Rational) -> Result<Self> {
        if mp.family() != Family::A {
            return Err(Error::Unsupported(format!("two-torus for {}", mp.name())));
        }
        Ok(GwContext { mp: mp.clone(), torus: Torus::Two { nu1, nu2 } })
    }

    /// The two-torus weights `ν_1 = (l+1-k̄) ν`, `ν_2 = k̄ ν` selected by the marked node.
    pub fn restricted(mp: &MarkedPair, nu: &Rational) -> Result<Self> {
        let l = mp.rank() as i64;
        let k = mp.marked as i64 + 1;
        Self::two_torus(mp, nu * Rational::from_integer((l + 1 - k).into()), nu * Rational::from_integer(k.into()))
    }

    pub fn rank(&self) -> usize {
        self.mp.rank()
    }
}

fn ri(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `η_GW(∂_i, ∂_j)`.
pub fn gw_eta(ctx: &GwContext, i: usize, j: usize) -> Rational {
    let l = ctx.rank();
    let g = ri(ctx.mp.mckay_order as i64);
    if i == l + 1 && j == l + 1 {
        match &ctx.torus {
            Torus::One { nu } => (nu * nu * g).recip(),
            Torus::Two { nu1, nu2 } => (nu1 * nu2 * g).recip(),
        }
    } else if i <= l && j <= l {
        ri(-ctx.mp.rs.c(i - 1, j - 1))
    } else {
        Rational::zero()
    }
}

pub fn gw_eta_matrix(ctx: &GwContext) -> RatMatrix {
    let n = ctx.rank() + 1;
    RatMatrix::from_fn(n, n, |i, j| gw_eta(ctx, i + 1, j + 1))
}

/// Triples with at least one index `l+1` do not depend on the point.
fn extra_direction_triple(ctx: &GwContext, idx: [usize; 3]) -> Option<Rational> {
    let l = ctx.rank();
    let rest: Vec<usize> = idx.iter().copied().filter(|&a| a != l + 1).collect();
    match rest.len() {
        0 => Some(gw_eta(ctx, l + 1, l + 1)),
        1 => Some(gw_eta(ctx, rest[0], l + 1)),
        2 => Some(gw_eta(ctx, rest[0], rest[1])),
        _ => None,
    }
}

fn root_exponential(b: &[i64], pt: &EvalPoint) -> Result<Rational> {
    let e = monomial(b).eval(&pt.q)?;
    if e.is_one() {
        return Err(Error::Discriminant);
    }
    Ok(e)
}

/// `∂³(F⁰ + F⁺)/∂x_i∂x_j∂x_k` for the one-dimensional torus:
/// `-ν Σ_{β>0} <α_i,β><α_j,β><α_k,β> (E_β+1)/(E_β-1)` when no index is `l+1`.
pub fn gw_triple(ctx: &GwContext, i: usize, j: usize, k: usize, pt: &EvalPoint) -> Result<Rational> {
    let nu = match &ctx.torus {
        Torus::One { nu } => nu.clone(),
        Torus::Two { .. } => return Err(Error::Invalid("gw_triple needs a one-dimensional torus".into())),
    };
    if let Some(v) = extra_direction_triple(ctx, [i, j, k]) {
        return Ok(v);
    }
    let mut s = Rational::zero();
    for b in &ctx.mp.rs.positive_roots {
        let w = b[i - 1] * b[j - 1] * b[k - 1];
        if w == 0 {
            continue;
        }
        let e = root_exponential(b, pt)?;
        s -= ri(w) * (&e + Rational::one()) / (e - Rational::one());
    }
    Ok(nu * s)
}

/// Classical coefficient for sorted 1-based `i ≤ j ≤ k`:
/// `(j ν_1 + (l+1-j) ν_2) i (l+1-k) / (l+1)`.
pub fn a2_classical_coefficient(l: usize, nu1: &Rational, nu2: &Rational, idx: [usize; 3]) -> Rational {
    let mut s = idx;
    s.sort_unstable();
    let [i, j, k] = s.map(|x| x as i64);
    let l1 = l as i64 + 1;
    (nu1 * ri(j) + nu2 * ri(l1 - j)) * ri(i * (l1 - k)) / ri(l1)
}

/// Third derivatives of the two-torus type-A potential.
pub fn gw_triple_a2(ctx: &GwContext, i: usize, j: usize, k: usize, pt: &EvalPoint) -> Result<Rational> {
    let (nu1, nu2) = match &ctx.torus {
        Torus::Two { nu1, nu2 } => (nu1.clone(), nu2.clone()),
        Torus::One { .. } => return Err(Error::Invalid("gw_triple_a2 needs the two-dimensional torus".into())),
    };
    if let Some(v) = extra_direction_triple(ctx, [i, j, k]) {
        return Ok(v);
    }
    let rs = &ctx.mp.rs;
    let l = rs.rank;
    let mut classical = Rational::zero();
    for a in 0..l {
        let ca = rs.c(i - 1, a);
        if ca == 0 {
            continue;
        }
        for b in 0..l {
            let cb = rs.c(j - 1, b);
            if cb == 0 {
                continue;
            }
            for c in 0..l {
                let cc = rs.c(k - 1, c);
                if cc != 0 {
                    classical -= ri(ca * cb * cc) * a2_classical_coefficient(l, &nu1, &nu2, [a + 1, b + 1, c + 1]);
                }
            }
        }
    }
    let mut quantum = Rational::zero();
    for b in &rs.positive_roots {
        let w = b[i - 1] * b[j - 1] * b[k - 1];
        if w == 0 {
            continue;
        }
        let e = root_exponential(b, pt)?;
        quantum -= ri(w) / (e - Rational::one());
    }
    Ok(classical + (nu1 + nu2) * quantum)
}

/// All `(l+1)³` third derivatives, using whichever formula matches the torus.
pub fn gw_tensor(ctx: &GwContext, pt: &EvalPoint) -> Result<Tensor3> {
    let n = ctx.rank() + 1;
    let mut t = Tensor3::zeros(n);
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                let v = match ctx.torus {
                    Torus::One { .. } => gw_triple(ctx, a + 1, b + 1, c + 1, pt)?,
                    Torus::Two { .. } => gw_triple_a2(ctx, a + 1, b + 1, c + 1, pt)?,
                };
                for (x, y, z) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                    t.set(x, y, z, v.clone());
                }
            }
        }
    }
    Ok(t)
}

/// `-Σ_σ Θ_σi Θ_σj Θ_σk T_σ/(1-T_σ)` with `T_σ = Π_m (e^{τ_m})^{-Θ_σm}`; this is
/// `(1/2ν) ∂³F⁺/∂τ_i∂τ_j∂τ_k` for `D_l`. `tau_exp[m] = e^{τ_m}`, indices 1-based.
pub fn dtype_tau_triple(l: usize, i: usize, j: usize, k: usize, tau_exp: &[Rational]) -> Result<Rational> {
    let mut s = Rational::zero();
    for row in dtype_theta(l) {
        let w = row[i - 1] * row[j - 1] * row[k - 1];
        if w == 0 {
            continue;
        }
        let mut t = Rational::one();
        for (m, &th) in row.iter().enumerate() {
            if th != 0 {
                t *= pow_i(&tau_exp[m], -th);
            }
        }
        if t.is_one() {
            return Err(Error::Discriminant);
        }
        s -= ri(w) * &t / (Rational::one() - t);
    }
    Ok(s)
}

/// `Σ_σ Θ_σi Θ_σj Θ_σk` (1-based).
pub fn theta_cubic(l: usize, i: usize, j: usize, k: usize) -> i64 {
    dtype_theta(l).iter().map(|r| r[i - 1] * r[j - 1] * r[k - 1]).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{frac, int};

    fn pt(mp: &MarkedPair, q: &[i64]) -> EvalPoint {
        EvalPoint::for_pair(mp, q.iter().map(|&x| int(x)).collect(), int(3)).unwrap()
    }

    #[test]
    fn a1_triple() {
        let mp = MarkedPair::new(Family::A, 1, Some(1)).unwrap();
        let ctx = GwContext::one_torus(&mp);
        assert_eq!(gw_triple(&ctx, 1, 1, 1, &pt(&mp, &[2])).unwrap(), frac(-40, 3));
    }

    #[test]
    fn eta_entries() {
        let d4 = MarkedPair::standard(Family::D, 4).unwrap();
        let ctx = GwContext::one_torus(&d4);
        assert_eq!(gw_eta(&ctx, 5, 5), frac(1, 8));
        assert_eq!(gw_eta(&ctx, 2, 3), int(1));
        assert_eq!(gw_eta(&ctx, 2, 2), int(-2));
        assert_eq!(gw_eta(&ctx, 1, 5), int(0));
        let half = GwContext::with_nu(&d4, frac(1, 2));
        assert_eq!(gw_eta(&half, 5, 5), frac(1, 2));
    }

    #[test]
    fn extra_direction_entries() {
        let d5 = MarkedPair::standard(Family::D, 5).unwrap();
        let ctx = GwContext::one_torus(&d5);
        let p = pt(&d5, &[2, 3, 5, 7, 11]);
        assert_eq!(gw_triple(&ctx, 6, 6, 6, &p).unwrap(), frac(1, 12));
        assert_eq!(gw_triple(&ctx, 2, 3, 6, &p).unwrap(), int(1));
        assert_eq!(gw_triple(&ctx, 6, 3, 6, &p).unwrap(), int(0));
    }

    #[test]
    fn discriminant_is_an_error() {
        let mp = MarkedPair::new(Family::A, 1, Some(1)).unwrap();
        let ctx = GwContext::one_torus(&mp);
        assert_eq!(gw_triple(&ctx, 1, 1, 1, &pt(&mp, &[1])), Err(Error::Discriminant));
    }

    #[test]
    fn a2_classical_example() {
        assert_eq!(a2_classical_coefficient(2, &int(1), &int(1), [1, 1, 1]), int(2));
    }

    #[test]
    fn a2_at_equal_weights_matches_one_torus() {
        for l in 1..=4 {
            for k in 1..=l {
                let mp = MarkedPair::new(Family::A, l, Some(k)).unwrap();
                for nu in [int(1), int(2), frac(3, 5)] {
                    let two = GwContext::two_torus(&mp, nu.clone(), nu.clone()).unwrap();
                    let one = GwContext::with_nu(&mp, nu.clone());
                    let q: Vec<i64> = [2, 3, 5, 7][..l].to_vec();
                    let p = pt(&mp, &q);
                    assert_eq!(gw_tensor(&two, &p).unwrap(), gw_tensor(&one, &p).unwrap());
                }
            }
        }
    }

    #[test]
    fn restriction_of_a3_at_node_two() {
        // ν_1 = ν_2 = 2 at ν = 1, which is the one-torus structure at ν = 2
        let mp = MarkedPair::new(Family::A, 3, Some(2)).unwrap();
        let r = GwContext::restricted(&mp, &int(1)).unwrap();
        let one = GwContext::with_nu(&mp, int(2));
        let p = pt(&mp, &[2, 3, 5]);
        assert_eq!(gw_tensor(&r, &p).unwrap(), gw_tensor(&one, &p).unwrap());
    }

    #[test]
    fn tau_triples_vanish_for_distinct_indices() {
        let tau: Vec<Rational> = [2, 3, 5, 7, 11].iter().map(|&x| int(x)).collect();
        assert_eq!(dtype_tau_triple(5, 1, 2, 3, &tau).unwrap(), int(0));
        assert_eq!(dtype_tau_triple(5, 2, 4, 5, &tau).unwrap(), int(0));
    }

    #[test]
    fn theta_identities() {
        for l in 4..=8 {
            for i in 1..=l {
                for j in 1..=l {
                    let expect = if i == j { 2 * (l as i64 - i as i64) } else { (i as i64 - j as i64).signum() + 1 };
                    assert_eq!(theta_cubic(l, i, i, j), expect);
                }
            }
        }
    }

    #[test]
    fn tensor_is_symmetric() {
        let mp = MarkedPair::standard(Family::E, 6).unwrap();
        let ctx = GwContext::one_torus(&mp);
        let p = pt(&mp, &[2, 3, 5, 7, 11, 13]);
        assert!(gw_tensor(&ctx, &p).unwrap().is_totally_symmetric());
    }
}
