//! Seeded end-to-end comparisons on the LG side: the mirror theorem for A and D, the
//! residue lemma for D, and the D-type dual pairing.

use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{int, to_pq, Rational};
use crate::frobdual::PointSampler;
use crate::gw::{gw_tensor, GwContext};
use crate::invariants::{weyl_denominator_at, EvalPoint};
use crate::rootsys::{Family, MarkedPair};

use super::dual::{lg_dual_eta_matrix, lg_dual_tensor};
use super::lemma::{lemma_closed_form, lemma_tags};
use super::local::LocalExpansions;
use super::superpotential::Superpotential;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub point_index: usize,
    /// Pole tag for lemma checks; empty otherwise.
    pub tag: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub family: String,
    pub rank: usize,
    pub kbar: usize,
    pub nu: String,
    pub seed: u64,
    pub points: Vec<Vec<String>>,
    pub entries_compared: usize,
    pub mismatches: Vec<Mismatch>,
    pub pass: bool,
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render(&self) -> String {
        let mut s = format!(
            "{} {}{} (marked node {}, nu={}): {} points, {} entries, {} mismatches: {}\n",
            self.check,
            self.family,
            self.rank,
            self.kbar,
            self.nu,
            self.points.len(),
            self.entries_compared,
            self.mismatches.len(),
            if self.pass { "PASS" } else { "FAIL" }
        );
        for m in self.mismatches.iter().take(20) {
            let tag = if m.tag.is_empty() { String::new() } else { format!(" at {}", m.tag) };
            s.push_str(&format!(
                "  point {} ({},{},{}){}: {} vs {}\n",
                m.point_index, m.i, m.j, m.k, tag, m.lhs, m.rhs
            ));
        }
        s
    }
}

/// `count` points `(q, u)` whose `κ` is generic and with `δ(q) ≠ 0`.
pub fn sample_lg_points(
    mp: &MarkedPair,
    nu: &Rational,
    count: usize,
    seed: u64,
) -> Result<Vec<(EvalPoint, Superpotential)>> {
    let mut s = PointSampler::new(seed);
    let mut out = Vec::with_capacity(count);
    let mut misses = 0;
    while out.len() < count {
        let q: Vec<Rational> = (0..mp.rank()).map(|_| s.positive_rational()).collect();
        let u = s.positive_rational();
        let pt = EvalPoint::for_pair(mp, q, u)?;
        let ok = !weyl_denominator_at(&mp.rs, &pt.q)?.is_zero();
        match Superpotential::from_point(mp, &pt.q, nu) {
            Ok(sp) if ok => out.push((pt, sp)),
            Ok(_) | Err(Error::NonGenericKappa) => {
                misses += 1;
                if misses > 64 * count.max(1) {
                    return Err(Error::RetryBudget);
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn gw_context(mp: &MarkedPair, nu: &Rational) -> Result<GwContext> {
    match mp.family() {
        Family::A => GwContext::restricted(mp, nu),
        Family::D => Ok(GwContext::with_nu(mp, nu.clone())),
        Family::E => Err(Error::Unsupported("LG mirror comparison for type E".into())),
    }
}

fn report(check: &str, mp: &MarkedPair, nu: &Rational, seed: u64, pts: &[(EvalPoint, Superpotential)]) -> CheckReport {
    CheckReport {
        check: check.into(),
        family: mp.family().to_string(),
        rank: mp.rank(),
        kbar: mp.marked + 1,
        nu: to_pq(nu),
        seed,
        points: pts.iter().map(|(p, _)| p.q.iter().chain([&p.u]).map(to_pq).collect()).collect(),
        entries_compared: 0,
        mismatches: Vec::new(),
        pass: false,
        elapsed_ms: 0,
    }
}

fn finish(mut r: CheckReport, per_point: Vec<(usize, Vec<Mismatch>)>, start: Instant) -> CheckReport {
    for (n, m) in per_point {
        r.entries_compared += n;
        r.mismatches.extend(m);
    }
    r.pass = r.mismatches.is_empty() && r.entries_compared > 0;
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    r
}

/// LG dual structure constants against the GW ones (two-torus restriction for A) for all
/// `1 ≤ i,j,k ≤ l+1`.
pub fn verify_mirror(mp: &MarkedPair, nu: &Rational, count: usize, seed: u64) -> Result<CheckReport> {
    let start = Instant::now();
    let ctx = gw_context(mp, nu)?;
    let pts = sample_lg_points(mp, nu, count, seed)?;
    let per_point = pts
        .par_iter()
        .enumerate()
        .map(|(p, (pt, sp))| {
            let lg = lg_dual_tensor(sp)?;
            let gw = gw_tensor(&ctx, pt)?;
            let n = lg.dim();
            let m = lg
                .mismatches(&gw)
                .into_iter()
                .map(|(a, b, c)| Mismatch {
                    i: a + 1,
                    j: b + 1,
                    k: c + 1,
                    point_index: p,
                    tag: String::new(),
                    lhs: to_pq(lg.get(a, b, c)),
                    rhs: to_pq(gw.get(a, b, c)),
                })
                .collect();
            Ok((n * n * n, m))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(report("mirror", mp, nu, seed, &pts), per_point, start))
}

/// Every per-pole residue against the closed forms, for all sorted triples, type D.
pub fn verify_lemma(l: usize, count: usize, seed: u64) -> Result<CheckReport> {
    let start = Instant::now();
    let mp = MarkedPair::standard(Family::D, l)?;
    let nu = int(1);
    let pts = sample_lg_points(&mp, &nu, count, seed)?;
    let per_point = pts
        .par_iter()
        .enumerate()
        .map(|(p, (_, sp))| {
            let tags = lemma_tags(sp);
            let loc = LocalExpansions::new(sp);
            let mut n = 0;
            let mut out = Vec::new();
            for i in 1..=l + 1 {
                for j in i..=l + 1 {
                    for k in j..=l + 1 {
                        let got = loc.lemma_contributions(sp, [i - 1, j - 1, k - 1], &tags)?;
                        for (tag, r) in got {
                            let c = lemma_closed_form(sp, i, j, k, tag)?;
                            n += 1;
                            if r != c {
                                out.push(Mismatch {
                                    i,
                                    j,
                                    k,
                                    point_index: p,
                                    tag: tag.to_string(),
                                    lhs: to_pq(&r),
                                    rhs: to_pq(&c),
                                });
                            }
                        }
                    }
                }
            }
            Ok((n, out))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(report("lemma", &mp, &nu, seed, &pts), per_point, start))
}

/// `η♭_ij = −C_ij` and `η♭_{l+1,l+1} = 1/(4ν²(l−2))`, type D.
pub fn verify_d_eta(l: usize, nu: &Rational, count: usize, seed: u64) -> Result<CheckReport> {
    let start = Instant::now();
    let mp = MarkedPair::standard(Family::D, l)?;
    let pts = sample_lg_points(&mp, nu, count, seed)?;
    let corner = Rational::new(1.into(), (4 * (l as i64 - 2)).into()) / (nu * nu);
    let per_point = pts
        .par_iter()
        .enumerate()
        .map(|(p, (_, sp))| {
            let eta = lg_dual_eta_matrix(sp)?;
            let mut out = Vec::new();
            let mut n = 0;
            for i in 1..=l + 1 {
                for j in i..=l + 1 {
                    let expect = if i <= l && j <= l {
                        int(-mp.rs.c(i - 1, j - 1))
                    } else if i == l + 1 && j == l + 1 {
                        corner.clone()
                    } else {
                        continue;
                    };
                    let got = eta[(i - 1, j - 1)].clone();
                    n += 1;
                    if got != expect {
                        out.push(Mismatch {
                            i,
                            j,
                            k: l + 1,
                            point_index: p,
                            tag: String::new(),
                            lhs: to_pq(&got),
                            rhs: to_pq(&expect),
                        });
                    }
                }
            }
            Ok((n, out))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(report("eta", &mp, nu, seed, &pts), per_point, start))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d4_mirror_passes() {
        let mp = MarkedPair::standard(Family::D, 4).unwrap();
        let r = verify_mirror(&mp, &int(1), 2, 7).unwrap();
        assert!(r.pass, "{}", r.render());
        assert_eq!(r.entries_compared, 2 * 125);
    }

    #[test]
    fn same_seed_same_report() {
        let mp = MarkedPair::new(Family::A, 2, Some(1)).unwrap();
        let mut a = verify_mirror(&mp, &int(1), 2, 3).unwrap();
        let mut b = verify_mirror(&mp, &int(1), 2, 3).unwrap();
        a.elapsed_ms = 0;
        b.elapsed_ms = 0;
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn d_eta_with_weight() {
        let r = verify_d_eta(5, &Rational::new(3.into(), 2.into()), 2, 1).unwrap();
        assert!(r.pass, "{}", r.render());
    }

    #[test]
    fn e_type_is_rejected() {
        let mp = MarkedPair::standard(Family::E, 6).unwrap();
        assert!(matches!(
            verify_mirror(&mp, &int(1), 1, 1),
            Err(Error::Unsupported(_)) | Err(Error::MissingMarkedNode)
        ));
    }
}
