//! Admissible exponents, point sampling and the Vandermonde certificate.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::{nonzero_det_certificate, pow_i, RatMatrix, Rational};
use crate::invariants::{weyl_denominator_at, EvalPoint, ExtendedChart};
use crate::rootsys::MarkedPair;

const PRIME_POOL: [i64; 25] =
    [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

pub const DEFAULT_RETRIES: usize = 64;

/// `D = max(d_η + d_δ − d_ε)` with `d_{l+1} = 0`, and `S_adm = {n : Σ n_i d_i ≤ D}` in
/// lexicographic order.
pub fn admissible_exponents(mp: &MarkedPair) -> (Rational, Vec<Vec<u32>>) {
    let d = &mp.degrees;
    let dmax = d.iter().cloned().fold(Rational::zero(), |a, b| if b > a { b } else { a });
    let bound = &dmax + &dmax;
    let mut out = Vec::new();
    let mut cur = vec![0u32; d.len()];
    enumerate(d, &bound, 0, Rational::zero(), &mut cur, &mut out);
    (bound, out)
}

fn enumerate(d: &[Rational], bound: &Rational, i: usize, used: Rational, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if i == d.len() {
        out.push(cur.clone());
        return;
    }
    let mut acc = used;
    let mut n = 0u32;
    while &acc <= bound {
        cur[i] = n;
        enumerate(d, bound, i + 1, acc.clone(), cur, out);
        acc += &d[i];
        n += 1;
    }
    cur[i] = 0;
}

/// Rows `y^N` for `N ∈ S_adm`, columns the points.
pub fn vandermonde_matrix(s_adm: &[Vec<u32>], ys: &[Vec<Rational>]) -> RatMatrix {
    RatMatrix::from_fn(s_adm.len(), ys.len(), |r, c| {
        s_adm[r]
            .iter()
            .zip(&ys[c])
            .fold(Rational::one(), |acc, (&e, y)| if e == 0 { acc } else { acc * pow_i(y, e as i64) })
    })
}

/// Nonsingularity of the generalised Vandermonde matrix at the points' `y` values.
pub fn vandermonde_certificate(s_adm: &[Vec<u32>], ys: &[Vec<Rational>]) -> bool {
    if s_adm.len() != ys.len() {
        return false;
    }
    nonzero_det_certificate(&vandermonde_matrix(s_adm, ys))
}

/// A seeded source of points with small-prime-ratio coordinates.
pub struct PointSampler {
    rng: ChaCha8Rng,
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        PointSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rational(&mut self) -> Rational {
        let a = PRIME_POOL[self.rng.random_range(0..PRIME_POOL.len())];
        let b = PRIME_POOL[self.rng.random_range(0..PRIME_POOL.len())];
        let sign = if self.rng.random_bool(0.5) { 1 } else { -1 };
        Rational::new((sign * a).into(), b.into())
    }

    pub fn positive_rational(&mut self) -> Rational {
        let a = PRIME_POOL[self.rng.random_range(0..PRIME_POOL.len())];
        let b = PRIME_POOL[self.rng.random_range(0..PRIME_POOL.len())];
        Rational::new(a.into(), b.into())
    }

    /// A point with `δ ≠ 0`, invertible extended Jacobian and `accept` true, within
    /// `retries` attempts.
    pub fn point(&mut self, mp: &MarkedPair, retries: usize, accept: impl Fn(&EvalPoint) -> bool) -> Result<EvalPoint> {
        let chart = ExtendedChart::new(mp);
        for _ in 0..retries {
            let q: Vec<Rational> = (0..mp.rank()).map(|_| self.positive_rational()).collect();
            let u = self.positive_rational();
            let pt = EvalPoint::for_pair(mp, q, u)?;
            if weyl_denominator_at(&mp.rs, &pt.q)?.is_zero() {
                continue;
            }
            let (_, j) = chart.jacobian(&pt)?;
            if !nonzero_det_certificate(&j) || !accept(&pt) {
                continue;
            }
            return Ok(pt);
        }
        Err(Error::RetryBudget)
    }
}

/// `count` accepted points from `seed`, each with at most `retries` attempts.
pub fn sample_points(mp: &MarkedPair, count: usize, seed: u64) -> Result<Vec<EvalPoint>> {
    let mut s = PointSampler::new(seed);
    (0..count).map(|_| s.point(mp, DEFAULT_RETRIES, |_| true)).collect()
}

#[derive(Clone, Debug)]
pub struct InitialConditions {
    pub mp: MarkedPair,
    pub d: Rational,
    pub s_adm: Vec<Vec<u32>>,
    pub points: Vec<EvalPoint>,
    pub certificate: bool,
    /// Batches drawn before one certified.
    pub batches: usize,
}

/// Draw batches of `|S_adm|` points until the Vandermonde certificate holds.
pub fn initial_conditions(
    mp: &MarkedPair,
    seed: u64,
    retries: usize,
    accept: impl Fn(&EvalPoint) -> bool + Sync,
) -> Result<InitialConditions> {
    let (d, s_adm) = admissible_exponents(mp);
    let chart = ExtendedChart::new(mp);
    let mut sampler = PointSampler::new(seed);
    for batch in 1..=retries {
        let points = (0..s_adm.len()).map(|_| sampler.point(mp, retries, &accept)).collect::<Result<Vec<_>>>()?;
        let ys = points
            .iter()
            .map(|p| {
                chart.jacobian(p).map(|(mut v, _)| {
                    v.pop();
                    v
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if vandermonde_certificate(&s_adm, &ys) {
            return Ok(InitialConditions { mp: mp.clone(), d, s_adm, points, certificate: true, batches: batch });
        }
    }
    Err(Error::RetryBudget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;
    use crate::rootsys::Family;

    #[test]
    fn table_sizes() {
        for (rank, d, n) in [(6, 12, 151), (7, 24, 254), (8, 60, 434)] {
            let mp = MarkedPair::standard(Family::E, rank).unwrap();
            let (dd, s) = admissible_exponents(&mp);
            assert_eq!((dd, s.len()), (int(d), n));
        }
    }

    #[test]
    fn a1_sizes() {
        let mp = MarkedPair::new(Family::A, 1, Some(1)).unwrap();
        let (d, s) = admissible_exponents(&mp);
        assert_eq!(d, int(1));
        assert_eq!(s, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn classical_vandermonde() {
        let s = vec![vec![0], vec![1], vec![2]];
        let ys: Vec<Vec<Rational>> = [2, 3, 5].iter().map(|&y| vec![int(y)]).collect();
        assert!(vandermonde_certificate(&s, &ys));
        let rep: Vec<Vec<Rational>> = [2, 3, 2].iter().map(|&y| vec![int(y)]).collect();
        assert!(!vandermonde_certificate(&s, &rep));
    }

    #[test]
    fn sampling_is_deterministic() {
        let mp = MarkedPair::standard(Family::D, 4).unwrap();
        let a = sample_points(&mp, 5, 11).unwrap();
        assert_eq!(a, sample_points(&mp, 5, 11).unwrap());
        assert_ne!(a, sample_points(&mp, 5, 12).unwrap());
        for p in &a {
            assert!(!weyl_denominator_at(&mp.rs, &p.q).unwrap().is_zero());
        }
    }
}
