//! Weyl-invariant Fourier polynomials: basic invariants, characters, the Weyl denominator,
//! the extended coordinates `y_α` with their Jacobian, and flat-coordinate maps.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{pow_i, MultiLaurent, RatMatrix, Rational};
use crate::rootsys::{Family, MarkedPair, RootSystem, WeightVec};

/// A rational point: `q_a = e^{x_a}` and `e^{x_{l+1}} = u^N` with `N = root_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalPoint {
    pub q: Vec<Rational>,
    pub u: Rational,
    pub root_order: u64,
}

impl EvalPoint {
    pub fn new(q: Vec<Rational>, u: Rational, root_order: u64) -> Result<Self> {
        if q.iter().any(Zero::is_zero) || u.is_zero() {
            return Err(Error::ZeroCoordinate);
        }
        Ok(EvalPoint { q, u, root_order })
    }

    pub fn for_pair(mp: &MarkedPair, q: Vec<Rational>, u: Rational) -> Result<Self> {
        Self::new(q, u, mp.root_order())
    }

    /// `e^{r x_{l+1}} = u^{N r}`; `N r` must be an integer.
    pub fn exp_last(&self, r: &Rational) -> Result<Rational> {
        let e = r * Rational::from_integer(BigInt::from(self.root_order));
        if !e.is_integer() {
            return Err(Error::Invalid(format!(
                "e^({r} x_last) is not an integral power of u with N = {}",
                self.root_order
            )));
        }
        let k: i64 = e.to_integer().try_into().map_err(|_| Error::Invalid("exponent overflow".into()))?;
        Ok(pow_i(&self.u, k))
    }

    pub fn with_u(&self, u: Rational) -> Self {
        EvalPoint { q: self.q.clone(), u, root_order: self.root_order }
    }
}

pub fn monomial(w: &[i64]) -> MultiLaurent {
    MultiLaurent::monomial(w.to_vec(), Rational::one())
}

pub fn orbit_sum(rs: &RootSystem, w: &[i64]) -> MultiLaurent {
    let mut p = MultiLaurent::zero(rs.rank);
    for v in rs.weyl_orbit(w) {
        p.add_term(v, Rational::one());
    }
    p
}

/// `Y_i`: average of the monomials over the orbit of `ω_i`.
pub fn basic_invariants(mp: &MarkedPair) -> Vec<MultiLaurent> {
    let rs = &mp.rs;
    (0..rs.rank)
        .map(|i| {
            let orb = rs.weyl_orbit(&rs.fundamental_weight(i));
            let c = Rational::new(BigInt::one(), BigInt::from(orb.len()));
            let mut p = MultiLaurent::zero(rs.rank);
            for v in orb {
                p.add_term(v, c.clone());
            }
            p
        })
        .collect()
}

/// Orbit sums `M_i` of the fundamental weights (the unnormalised `Y_i`).
pub fn orbit_sums(rs: &RootSystem) -> Vec<MultiLaurent> {
    (0..rs.rank).map(|i| orbit_sum(rs, &rs.fundamental_weight(i))).collect()
}

/// Adjoint character `Σ_{β∈R} e^β + l`.
pub fn adjoint_character(rs: &RootSystem) -> MultiLaurent {
    let mut p = MultiLaurent::constant(rs.rank, Rational::from_integer(BigInt::from(rs.rank)));
    for b in rs.all_roots() {
        p.add_term(b, Rational::one());
    }
    p
}

/// `Λ^k` of a character via Newton's identities with Adams operations `p(j x)`.
pub fn exterior_power(p: &MultiLaurent, k: usize) -> MultiLaurent {
    let n = p.nvars();
    let mut e = vec![MultiLaurent::constant(n, Rational::one())];
    let adams: Vec<MultiLaurent> = (1..=k).map(|j| p.scale_exponents(j as i64)).collect();
    for m in 1..=k {
        let mut acc = MultiLaurent::zero(n);
        for j in 1..=m {
            let term = &e[m - j] * &adams[j - 1];
            acc = if j % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        e.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(m))));
    }
    e.pop().unwrap()
}

/// Fundamental characters `W_1..W_l` for A, D and E6.
pub fn characters(mp: &MarkedPair) -> Result<Vec<MultiLaurent>> {
    let partial = partial_characters(mp);
    if partial.iter().all(Option::is_some) {
        Ok(partial.into_iter().map(Option::unwrap).collect())
    } else {
        Err(Error::Unsupported(format!("full character list for {}", mp.rs.name())))
    }
}

/// The characters that are available without weight multiplicities. Complete for A, D
/// and E6; for E7 and E8 only the minuscule, adjoint and exterior-power ones.
pub fn partial_characters(mp: &MarkedPair) -> Vec<Option<MultiLaurent>> {
    let rs = &mp.rs;
    let l = rs.rank;
    let fw = |i: usize| orbit_sum(rs, &rs.fundamental_weight(i));
    let mut out: Vec<Option<MultiLaurent>> = vec![None; l];
    match (rs.family, l) {
        (Family::A, _) => {
            for (i, slot) in out.iter_mut().enumerate() {
                *slot = Some(fw(i));
            }
        }
        (Family::D, _) => {
            let v = fw(0);
            for k in 2..=l - 2 {
                out[k - 1] = Some(exterior_power(&v, k));
            }
            out[0] = Some(v);
            out[l - 2] = Some(fw(l - 2));
            out[l - 1] = Some(fw(l - 1));
        }
        (Family::E, 6) => {
            let w1 = fw(0);
            let w2 = exterior_power(&w1, 2);
            let w3 = exterior_power(&w1, 3);
            out[3] = Some(w2.scale_exponents(-1));
            out[4] = Some(w1.scale_exponents(-1));
            out[5] = Some(adjoint_character(rs));
            out[0] = Some(w1);
            out[1] = Some(w2);
            out[2] = Some(w3);
        }
        (Family::E, 7) => {
            // 56 at node 6; Λ²56 = 1539 + 1 at node 5; Λ³56 = 27664 + 56 at node 4
            let w56 = fw(5);
            let one = MultiLaurent::constant(l, Rational::one());
            out[4] = Some(&exterior_power(&w56, 2) - &one);
            out[3] = Some(&exterior_power(&w56, 3) - &w56);
            out[5] = Some(w56);
            out[0] = Some(adjoint_character(rs));
        }
        (Family::E, _) => {
            // adjoint 248 at node 7; Λ²248 = 30380 + 248 at node 6
            let adj = adjoint_character(rs);
            out[5] = Some(&exterior_power(&adj, 2) - &adj);
            out[6] = Some(adj);
        }
    }
    out
}

/// `δ = e^{𝗐} Π_{β>0} (1 - e^{-β})`, expanded.
pub fn weyl_denominator(rs: &RootSystem) -> MultiLaurent {
    let n = rs.rank;
    let mut p = monomial(&rs.weyl_vector());
    for b in &rs.positive_roots {
        let neg: Vec<i64> = b.iter().map(|a| -a).collect();
        let f = &MultiLaurent::constant(n, Rational::one()) - &monomial(&neg);
        p = &p * &f;
    }
    p
}

/// `δ(q)` as a product, without expanding.
pub fn weyl_denominator_at(rs: &RootSystem, q: &[Rational]) -> Result<Rational> {
    let mut v = monomial(&rs.weyl_vector()).eval(q)?;
    for b in &rs.positive_roots {
        let e = monomial(b).eval(q)?;
        v *= Rational::one() - e.recip();
    }
    Ok(v)
}

/// The point `s_i · x` in `q` coordinates.
pub fn reflect_point(rs: &RootSystem, q: &[Rational], i: usize) -> Vec<Rational> {
    let mut out = q.to_vec();
    let mut qi = q[i].recip();
    for (b, qb) in q.iter().enumerate() {
        if b != i && rs.c(b, i) != 0 {
            qi *= pow_i(qb, -rs.c(b, i));
        }
    }
    out[i] = qi;
    out
}

/// Extended coordinates `y_α = e^{d_α x_{l+1}} Y_α`, `y_{l+1} = x_{l+1}`.
#[derive(Clone, Debug)]
pub struct ExtendedChart {
    pub mp: MarkedPair,
    pub y: Vec<MultiLaurent>,
}

impl ExtendedChart {
    pub fn new(mp: &MarkedPair) -> Self {
        ExtendedChart { mp: mp.clone(), y: basic_invariants(mp) }
    }

    /// Values `y_1..y_l` plus `u^N` in the last slot, and `∂y_α/∂x_i`.
    pub fn jacobian(&self, pt: &EvalPoint) -> Result<(Vec<Rational>, RatMatrix)> {
        let l = self.mp.rank();
        let mut vals = Vec::with_capacity(l + 1);
        let mut j = RatMatrix::zeros(l + 1, l + 1);
        for (a, ya) in self.y.iter().enumerate() {
            let (v, g) = ya.eval_with_gradient(&pt.q)?;
            let pref = pt.exp_last(&self.mp.degrees[a])?;
            for (i, gi) in g.iter().enumerate() {
                j[(a, i)] = gi * &pref;
            }
            let ya_val = v * pref;
            j[(a, l)] = &self.mp.degrees[a] * &ya_val;
            vals.push(ya_val);
        }
        j[(l, l)] = Rational::one();
        vals.push(pow_i(&pt.u, pt.root_order as i64));
        Ok((vals, j))
    }
}

pub fn extended_jacobian(mp: &MarkedPair, pt: &EvalPoint) -> Result<(Vec<Rational>, RatMatrix)> {
    ExtendedChart::new(mp).jacobian(pt)
}

/// One term `coef · u^{u_pow} · Π W_i^{w_pows[i]}` of a flat coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatTerm {
    pub coef: Rational,
    pub u_pow: i64,
    pub w_pows: Vec<u32>,
}

/// Flat coordinates `t_1..t_l` as polynomials in the characters and `u`, and
/// `t_{l+1} = last_scale · x_{l+1}`. Powers of `u` refer to `e^{x_{l+1}} = u^{root_order}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatMap {
    pub family: Family,
    pub rank: usize,
    pub root_order: u64,
    pub coords: Vec<Vec<FlatTerm>>,
    pub last_scale: Rational,
}

/// Flat coordinates at a point: `t_1..t_l`, `s = e^{t_{l+1}}`, and `∂t_A/∂x_i`.
#[derive(Clone, Debug)]
pub struct FlatValues {
    pub t: Vec<Rational>,
    pub s: Rational,
    pub jac: RatMatrix,
}

impl FlatMap {
    /// The E6 map in terms of `W_0 = e^{x_7/2} = u^6`:
    /// `t_1 = W_0^{1/3} W_1`, `t_2 = W_0^{2/3}(W_1² - 6W_2 - 12W_5)`,
    /// `t_3 = W_0(2W_1W_5 + W_3 + 3W_6 + 3)`, `t_4 = W_0^{2/3}(-W_5² + 12W_1 + 6W_4)`,
    /// `t_5 = W_0^{1/3} W_5`, `t_6 = W_0^{1/2}(W_6 + 2)`, `t_7 = x_7/12`.
    pub fn e6() -> Self {
        let t = |c: i64, u: i64, w: [u32; 6]| FlatTerm {
            coef: Rational::from_integer(c.into()),
            u_pow: u,
            w_pows: w.to_vec(),
        };
        let coords = vec![
            vec![t(1, 2, [1, 0, 0, 0, 0, 0])],
            vec![t(1, 4, [2, 0, 0, 0, 0, 0]), t(-6, 4, [0, 1, 0, 0, 0, 0]), t(-12, 4, [0, 0, 0, 0, 1, 0])],
            vec![
                t(2, 6, [1, 0, 0, 0, 1, 0]),
                t(1, 6, [0, 0, 1, 0, 0, 0]),
                t(3, 6, [0, 0, 0, 0, 0, 1]),
                t(3, 6, [0; 6]),
            ],
            vec![t(-1, 4, [0, 0, 0, 0, 2, 0]), t(12, 4, [1, 0, 0, 0, 0, 0]), t(6, 4, [0, 0, 0, 1, 0, 0])],
            vec![t(1, 2, [0, 0, 0, 0, 1, 0])],
            vec![t(1, 3, [0, 0, 0, 0, 0, 1]), t(2, 3, [0; 6])],
        ];
        FlatMap {
            family: Family::E,
            rank: 6,
            root_order: 12,
            coords,
            last_scale: Rational::new(BigInt::one(), BigInt::from(12)),
        }
    }

    /// Indices of the characters this map uses.
    pub fn used_characters(&self) -> Vec<usize> {
        let mut used = vec![false; self.rank];
        for term in self.coords.iter().flatten() {
            for (i, &p) in term.w_pows.iter().enumerate() {
                used[i] |= p > 0;
            }
        }
        (0..self.rank).filter(|&i| used[i]).collect()
    }

    /// Evaluate `t`, `s` and the Jacobian, given the characters (entries the map does not
    /// use may be `None`).
    pub fn eval(&self, chars: &[Option<MultiLaurent>], pt: &EvalPoint) -> Result<FlatValues> {
        let l = self.rank;
        if !pt.root_order.is_multiple_of(self.root_order) {
            return Err(Error::Invalid(format!(
                "point root order {} is not a multiple of the flat map's {}",
                pt.root_order, self.root_order
            )));
        }
        let ratio = (pt.root_order / self.root_order) as i64;
        let mut wv = Vec::with_capacity(l);
        let mut wg = Vec::with_capacity(l);
        for i in 0..l {
            match &chars[i] {
                Some(w) => {
                    let (v, g) = w.eval_with_gradient(&pt.q)?;
                    wv.push(v);
                    wg.push(g);
                }
                None => {
                    if self.used_characters().contains(&i) {
                        return Err(Error::Unsupported(format!(
                            "character W{} of {}{}",
                            i + 1,
                            self.family,
                            self.rank
                        )));
                    }
                    wv.push(Rational::zero());
                    wg.push(vec![Rational::zero(); l]);
                }
            }
        }
        let n_self = Rational::from_integer(BigInt::from(self.root_order));
        let mut t = Vec::with_capacity(l);
        let mut jac = RatMatrix::zeros(l + 1, l + 1);
        for (a, terms) in self.coords.iter().enumerate() {
            let mut val = Rational::zero();
            for term in terms {
                let upart = &term.coef * pow_i(&pt.u, term.u_pow * ratio);
                let mut mono = upart.clone();
                for (i, &p) in term.w_pows.iter().enumerate() {
                    if p > 0 {
                        mono *= pow_i(&wv[i], p as i64);
                    }
                }
                for x in 0..l {
                    let mut d = Rational::zero();
                    for (i, &p) in term.w_pows.iter().enumerate() {
                        if p == 0 || wg[i][x].is_zero() {
                            continue;
                        }
                        let mut f = &upart * Rational::from_integer(p.into()) * &wg[i][x];
                        f *= pow_i(&wv[i], p as i64 - 1);
                        for (k, &pk) in term.w_pows.iter().enumerate() {
                            if k != i && pk > 0 {
                                f *= pow_i(&wv[k], pk as i64);
                            }
                        }
                        d += f;
                    }
                    jac[(a, x)] += d;
                }
                jac[(a, l)] += &mono * Rational::from_integer(term.u_pow.into()) / &n_self;
                val += mono;
            }
            t.push(val);
        }
        jac[(l, l)] = self.last_scale.clone();
        let s = pt.exp_last(&self.last_scale)?;
        Ok(FlatValues { t, s, jac })
    }
}

/// E6 flat coordinates at a point (`root_order` divisible by 12).
pub fn e6_flat_map(pt: &EvalPoint) -> Result<FlatValues> {
    let mp = MarkedPair::standard(Family::E, 6)?;
    let chars: Vec<Option<MultiLaurent>> = characters(&mp)?.into_iter().map(Some).collect();
    FlatMap::e6().eval(&chars, pt)
}

/// A Weyl-invariant Laurent polynomial stored by its coefficients on dominant weights.
pub type DominantForm = BTreeMap<WeightVec, Rational>;

pub fn dominant_part(f: &MultiLaurent) -> DominantForm {
    f.terms().filter(|(e, _)| e.iter().all(|&a| a >= 0)).map(|(e, c)| (e.clone(), c.clone())).collect()
}

/// Expand a dominant form back to the full orbit sum.
pub fn expand_dominant(rs: &RootSystem, a: &DominantForm) -> MultiLaurent {
    let mut p = MultiLaurent::zero(rs.rank);
    for (w, c) in a {
        for v in rs.weyl_orbit(w) {
            p.add_term(v, c.clone());
        }
    }
    p
}

/// Dominant part of `a · g` for invariant `a` (dominant form) and invariant `g` (full).
pub fn mul_dominant(rs: &RootSystem, a: &DominantForm, g: &MultiLaurent) -> DominantForm {
    let mut candidates: BTreeMap<WeightVec, ()> = BTreeMap::new();
    for nu in a.keys() {
        for (w, _) in g.terms() {
            let s: Vec<i64> = nu.iter().zip(w).map(|(x, y)| x + y).collect();
            candidates.insert(rs.to_dominant(&s), ());
        }
    }
    let mut out = DominantForm::new();
    for mu in candidates.into_keys() {
        let mut c = Rational::zero();
        for (w, gw) in g.terms() {
            let d: Vec<i64> = mu.iter().zip(w).map(|(x, y)| x - y).collect();
            if let Some(av) = a.get(&rs.to_dominant(&d)) {
                c += av * gw;
            }
        }
        if !c.is_zero() {
            out.insert(mu, c);
        }
    }
    out
}

/// Rewrites invariant polynomials as polynomials in the orbit sums `M_i`.
pub struct OrbitSumBasis {
    rs: RootSystem,
    sums: Vec<MultiLaurent>,
    heights: Vec<Rational>,
    cache: HashMap<Vec<u32>, DominantForm>,
}

impl OrbitSumBasis {
    pub fn new(rs: &RootSystem) -> Self {
        let heights = (0..rs.rank)
            .map(|i| rs.root_coords(&rs.fundamental_weight(i)).into_iter().fold(Rational::zero(), |a, b| a + b))
            .collect();
        OrbitSumBasis { rs: rs.clone(), sums: orbit_sums(rs), heights, cache: HashMap::new() }
    }

    fn height(&self, w: &[i64]) -> Rational {
        w.iter().zip(&self.heights).fold(Rational::zero(), |acc, (&a, h)| acc + h * Rational::from_integer(a.into()))
    }

    /// Dominant form of `Π M_i^{n_i}`.
    pub fn power_product(&mut self, n: &[u32]) -> DominantForm {
        if let Some(v) = self.cache.get(n) {
            return v.clone();
        }
        let result = match (0..n.len()).filter(|&i| n[i] > 0).min_by_key(|&i| self.sums[i].len()) {
            None => {
                let mut d = DominantForm::new();
                d.insert(vec![0; n.len()], Rational::one());
                d
            }
            Some(i) => {
                let mut m = n.to_vec();
                m[i] -= 1;
                let prev = self.power_product(&m);
                mul_dominant(&self.rs, &prev, &self.sums[i])
            }
        };
        self.cache.insert(n.to_vec(), result.clone());
        result
    }

    /// Coefficients `c_n` with `f = Σ c_n Π M_i^{n_i}`.
    pub fn decompose(&mut self, f: &DominantForm) -> BTreeMap<Vec<u32>, Rational> {
        let mut rest = f.clone();
        let mut out = BTreeMap::new();
        while let Some(top) = rest.keys().max_by(|a, b| self.height(a).cmp(&self.height(b))).cloned() {
            let c = rest[&top].clone();
            let n: Vec<u32> = top.iter().map(|&a| a as u32).collect();
            let prod = self.power_product(&n);
            for (w, v) in prod {
                *rest.entry(w).or_insert_with(Rational::zero) -= &c * v;
            }
            rest.retain(|_, v| !v.is_zero());
            out.insert(n, c);
        }
        out
    }
}
