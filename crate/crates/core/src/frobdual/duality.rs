//! The comparison tensors `ℓ_GW` and `ℓ_AW` in the chart `y_1..y_l, x_{l+1}` and the
//! initial-conditions verification built on them.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{
    mat_inverse, nonzero_det_certificate, parse_rational, to_plain, to_pq, MultiLaurent, RatMatrix, Rational, Tensor3,
};
use crate::gw::{gw_eta_matrix, gw_tensor, GwContext};
use crate::invariants::{characters, partial_characters, EvalPoint, ExtendedChart, FlatMap};
use crate::rootsys::{Family, MarkedPair};

use super::initial::{admissible_exponents, initial_conditions, PointSampler, DEFAULT_RETRIES};
use super::prepotential::{e6_prepotential, FlatPoint, Prepotential};
use super::wdvv::{c_tensor_upper, find_unit_and_eta, wdvv_residual};

pub const NORMALIZATION_NOTE: &str = "x-chart with q_a = e^{x_a} and e^{x_{l+1}} = u^N; \
the intersection form is -C on the Cartan part and 1/|G| in the (l+1,l+1) slot at nu = 1; \
t_{l+1} = x_{l+1}/N in the flat map, so e^{t_{l+1}} = u";

fn degenerate(_: Error) -> Error {
    Error::DegeneratePoint
}

/// `(ℓ_GW)^{αβ}_ε = Σ c_{ijk} (η♭)^{ia} J_{αa} (η♭)^{jb} J_{βb} (J^{-1})_{kε}` at `ν = 1`.
pub fn ell_gw(mp: &MarkedPair, pt: &EvalPoint) -> Result<Tensor3> {
    let (_, j) = ExtendedChart::new(mp).jacobian(pt)?;
    ell_gw_with(mp, pt, &j)
}

fn ell_gw_with(mp: &MarkedPair, pt: &EvalPoint, j: &RatMatrix) -> Result<Tensor3> {
    let ctx = GwContext::one_torus(mp);
    let inv = mat_inverse(&gw_eta_matrix(&ctx))?;
    let jinv = mat_inverse(j).map_err(degenerate)?;
    let c = gw_tensor(&ctx, pt)?;
    let id = RatMatrix::identity(mp.rank() + 1);
    Ok(c.transform(&inv, &inv, &id).transform(j, j, &jinv.transpose()))
}

/// `g^{αβ} = J (η♭)^{-1} J^T`.
pub fn g_matrix(mp: &MarkedPair, pt: &EvalPoint) -> Result<RatMatrix> {
    let (_, j) = ExtendedChart::new(mp).jacobian(pt)?;
    let inv = mat_inverse(&gw_eta_matrix(&GwContext::one_torus(mp)))?;
    Ok(&(&j * &inv) * &j.transpose())
}

/// `Σ_ε ℓ^{αβ}_ε E^ε` for `E = ∂_{x_{l+1}}`, whose components in the y-chart are `J_{ε,l+1}`.
pub fn unit_contraction(ell: &Tensor3, j: &RatMatrix) -> RatMatrix {
    let l = ell.dim() - 1;
    let e: Vec<Rational> = (0..=l).map(|k| j[(k, l)].clone()).collect();
    ell.contract_last(&e)
}

/// Everything needed to evaluate `ℓ_AW` at many points.
pub struct AwData {
    pub mp: MarkedPair,
    pub f: Prepotential,
    pub fm: FlatMap,
    pub chars: Vec<Option<MultiLaurent>>,
    pub unit: usize,
    pub eta: RatMatrix,
    chart: ExtendedChart,
}

impl AwData {
    pub fn new(mp: &MarkedPair, f: Prepotential, fm: FlatMap) -> Result<Self> {
        if f.rank != mp.rank() || fm.rank != mp.rank() || fm.family != mp.family() {
            return Err(Error::Invalid(format!("data does not match {}", mp.name())));
        }
        if let Some(fam) = f.family {
            if fam != mp.family() {
                return Err(Error::Invalid(format!("prepotential is for family {fam}, not {}", mp.family())));
            }
        }
        let chars = match characters(mp) {
            Ok(c) => c.into_iter().map(Some).collect(),
            Err(_) => partial_characters(mp),
        };
        let (unit, eta) = find_unit_and_eta(&f)?;
        mat_inverse(&eta)?;
        Ok(AwData { mp: mp.clone(), f, fm, chars, unit, eta, chart: ExtendedChart::new(mp) })
    }

    /// The embedded E6 prepotential and flat map.
    pub fn e6() -> Result<Self> {
        Self::new(&MarkedPair::standard(Family::E, 6)?, e6_prepotential(), FlatMap::e6())
    }

    /// Flat coordinates and `∂t/∂x` at a point.
    pub fn flat(&self, pt: &EvalPoint) -> Result<(FlatPoint, RatMatrix)> {
        let fv = self.fm.eval(&self.chars, pt)?;
        Ok((FlatPoint::new(fv.t, fv.s), fv.jac))
    }

    /// Whether both Jacobians are invertible at `pt`.
    pub fn admissible(&self, pt: &EvalPoint) -> bool {
        match self.flat(pt) {
            Ok((_, jt)) => nonzero_det_certificate(&jt),
            Err(_) => false,
        }
    }

    pub fn ell_aw(&self, pt: &EvalPoint) -> Result<Tensor3> {
        let (_, jyx) = self.chart.jacobian(pt)?;
        self.ell_aw_with(pt, &jyx)
    }

    fn ell_aw_with(&self, pt: &EvalPoint, jyx: &RatMatrix) -> Result<Tensor3> {
        let (fp, jt) = self.flat(pt)?;
        let jt_inv = mat_inverse(&jt).map_err(degenerate)?;
        let jyx_inv = mat_inverse(jyx).map_err(degenerate)?;
        let dy_dt = jyx * &jt_inv;
        let dt_dy = &jt * &jyx_inv;
        let c = c_tensor_upper(&self.f, &self.eta, &fp)?;
        Ok(c.transform(&dy_dt, &dy_dt, &dt_dy.transpose()))
    }

    /// WDVV at `count` seeded random flat points.
    pub fn wdvv_admission(&self, count: usize, seed: u64) -> Result<bool> {
        let mut s = PointSampler::new(seed);
        for _ in 0..count {
            let t = (0..self.f.rank).map(|_| s.rational()).collect();
            let mut fp = FlatPoint::new(t, s.positive_rational());
            fp.t_last = Some(s.rational());
            if !wdvv_residual(&self.f, &self.eta, &fp)?.vanishes() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `ℓ_AW` with the embedded or supplied data.
pub fn ell_aw(data: &AwData, pt: &EvalPoint) -> Result<Tensor3> {
    data.ell_aw(pt)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub index: usize,
    pub q: Vec<String>,
    pub u: String,
    pub mismatches: usize,
    pub unit_contraction: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub alpha: usize,
    pub beta: usize,
    pub eps: usize,
    pub point_index: usize,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub family: String,
    pub rank: usize,
    pub seed: u64,
    #[serde(rename = "D")]
    pub d: String,
    pub s_adm_size: usize,
    pub certificate: bool,
    pub unit_direction: usize,
    pub eta: Vec<Vec<String>>,
    pub normalization: String,
    pub points: Vec<PointRecord>,
    pub checks: Vec<CheckRecord>,
    pub entries_compared: usize,
    pub mismatches: usize,
    pub pass: bool,
    pub elapsed_ms: u64,
}

impl DualityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Invalid(format!("bad report: {e}")))
    }

    /// Plain-text summary.
    pub fn render(&self) -> String {
        let mut s = format!(
            "{}{} duality: {} points, D={}, |S_adm|={}, certificate={}, compared={}, mismatches={}, unit t{}: {}\n",
            self.family,
            self.rank,
            self.points.len(),
            parse_rational(&self.d).map(|d| to_plain(&d)).unwrap_or_else(|_| self.d.clone()),
            self.s_adm_size,
            self.certificate,
            self.entries_compared,
            self.mismatches,
            self.unit_direction + 1,
            match (self.pass, self.mismatches, self.certificate) {
                (true, _, _) => "PASS",
                (false, 0, false) => "UNCERTIFIED",
                _ => "FAIL",
            }
        );
        for c in self.checks.iter().filter(|c| !c.equal).take(20) {
            s.push_str(&format!(
                "  mismatch at point {} (alpha={}, beta={}, eps={}): {} vs {}\n",
                c.point_index, c.alpha, c.beta, c.eps, c.lhs, c.rhs
            ));
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct DualityOptions {
    pub seed: u64,
    pub retries: usize,
    /// Record every compared entry, not only mismatches.
    pub record_all: bool,
    /// Use this many points instead of `|S_adm|`; the certificate is then not attempted.
    pub points: Option<usize>,
}

impl Default for DualityOptions {
    fn default() -> Self {
        DualityOptions { seed: 1, retries: DEFAULT_RETRIES, record_all: true, points: None }
    }
}

struct PointOutcome {
    checks: Vec<CheckRecord>,
    mismatches: usize,
    unit_ok: bool,
}

fn compare_point(
    mp: &MarkedPair,
    data: &AwData,
    pt: &EvalPoint,
    index: usize,
    record_all: bool,
) -> Result<PointOutcome> {
    let (_, j) = ExtendedChart::new(mp).jacobian(pt)?;
    let lhs = ell_gw_with(mp, pt, &j)?;
    let rhs = data.ell_aw_with(pt, &j)?;
    let n = mp.rank() + 1;
    let mut checks = Vec::new();
    let mut mismatches = 0;
    for a in 0..n {
        for b in 0..n {
            for e in 0..n {
                let (x, y) = (lhs.get(a, b, e), rhs.get(a, b, e));
                let equal = x == y;
                if !equal {
                    mismatches += 1;
                }
                if record_all || !equal {
                    checks.push(CheckRecord {
                        alpha: a + 1,
                        beta: b + 1,
                        eps: e + 1,
                        point_index: index,
                        lhs: to_pq(x),
                        rhs: to_pq(y),
                        equal,
                    });
                }
            }
        }
    }
    let g = &(&j * &mat_inverse(&gw_eta_matrix(&GwContext::one_torus(mp)))?) * &j.transpose();
    let unit_ok = unit_contraction(&lhs, &j) == g && unit_contraction(&rhs, &j) == g;
    Ok(PointOutcome { checks, mismatches, unit_ok })
}

/// Sample certified initial conditions and compare `ℓ_GW` with `ℓ_AW` at each point.
/// With no data supplied only E6 is available.
pub fn verify_duality(mp: &MarkedPair, data: Option<AwData>, opts: &DualityOptions) -> Result<DualityReport> {
    let start = Instant::now();
    let data = match data {
        Some(d) => d,
        None if mp.family() == Family::E && mp.rank() == 6 => AwData::e6()?,
        None => return Err(Error::DataRequired),
    };
    if !data.wdvv_admission(10, opts.seed)? {
        return Err(Error::Invalid("prepotential fails WDVV".into()));
    }
    let (d, s_adm) = admissible_exponents(mp);
    let (points, certificate) = match opts.points {
        None => {
            let ic = initial_conditions(mp, opts.seed, opts.retries, |p| data.admissible(p))?;
            (ic.points, ic.certificate)
        }
        Some(n) => {
            let mut s = PointSampler::new(opts.seed);
            let pts = (0..n).map(|_| s.point(mp, opts.retries, |p| data.admissible(p))).collect::<Result<Vec<_>>>()?;
            (pts, false)
        }
    };
    let outcomes = points
        .par_iter()
        .enumerate()
        .map(|(i, pt)| compare_point(mp, &data, pt, i, opts.record_all))
        .collect::<Result<Vec<_>>>()?;
    let n = mp.rank() + 1;
    let mut report = DualityReport {
        family: mp.family().to_string(),
        rank: mp.rank(),
        seed: opts.seed,
        d: to_pq(&d),
        s_adm_size: s_adm.len(),
        certificate,
        unit_direction: data.unit,
        eta: (0..n).map(|a| (0..n).map(|b| to_pq(&data.eta[(a, b)])).collect()).collect(),
        normalization: NORMALIZATION_NOTE.into(),
        points: Vec::with_capacity(points.len()),
        checks: Vec::new(),
        entries_compared: points.len() * n * n * n,
        mismatches: 0,
        pass: false,
        elapsed_ms: 0,
    };
    for (i, (pt, out)) in points.iter().zip(outcomes).enumerate() {
        report.points.push(PointRecord {
            index: i,
            q: pt.q.iter().map(to_pq).collect(),
            u: to_pq(&pt.u),
            mismatches: out.mismatches,
            unit_contraction: out.unit_ok,
        });
        report.mismatches += out.mismatches;
        report.checks.extend(out.checks);
    }
    report.pass = certificate && report.mismatches == 0;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
