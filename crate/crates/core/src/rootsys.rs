//! Simply-laced root systems, Weyl orbits, marked pairs and the type-D auxiliary matrices.
//!
//! Weights are integer vectors in the fundamental-weight basis, so a weight is also the
//! exponent vector of its monomial `e^{<ω,h>} = Π q_a^{ω_a}`.
//!
//! Node labels: type A and D follow Bourbaki (D_l has nodes l-1 and l attached to l-2).
//! Type E uses a chain `1-2-…-(l-1)` with node `l` attached to node 3, so the trivalent
//! node is 3. For E6 this is the labeling in which `ω_1` carries the 27.
//! [`bourbaki_label`] translates.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{mat_inverse, RatMatrix, Rational};

pub type WeightVec = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::D => "D",
            Family::E => "E",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(parse_family(s)?.0)
    }
}

/// Accepts `A`, `D`, `E` or a name with the rank attached (`E6`, `d5`).
pub fn parse_family(s: &str) -> Result<(Family, Option<usize>)> {
    let s = s.trim();
    let mut chars = s.chars();
    let fam = match chars.next().map(|c| c.to_ascii_uppercase()) {
        Some('A') => Family::A,
        Some('D') => Family::D,
        Some('E') => Family::E,
        _ => return Err(Error::Unsupported(s.to_string())),
    };
    let rest = chars.as_str();
    if rest.is_empty() {
        return Ok((fam, None));
    }
    let r = rest.parse::<usize>().map_err(|_| Error::Unsupported(s.to_string()))?;
    Ok((fam, Some(r)))
}

fn dynkin_edges(family: Family, rank: usize) -> Result<Vec<(usize, usize)>> {
    let l = rank;
    let bad = || Error::Unsupported(format!("{family}{rank}"));
    match family {
        Family::A if l >= 1 => Ok((0..l - 1).map(|i| (i, i + 1)).collect()),
        Family::D if l >= 4 => {
            let mut e: Vec<_> = (0..l - 2).map(|i| (i, i + 1)).collect();
            e.push((l - 3, l - 1));
            Ok(e)
        }
        Family::E if (6..=8).contains(&l) => {
            let mut e: Vec<_> = (0..l - 2).map(|i| (i, i + 1)).collect();
            e.push((2, l - 1));
            Ok(e)
        }
        _ => Err(bad()),
    }
}

/// Bourbaki label (1-based) of the internal node `i` (1-based).
pub fn bourbaki_label(family: Family, rank: usize, i: usize) -> usize {
    match family {
        Family::E if i == rank => 2,
        Family::E if i == 1 => 1,
        Family::E => i + 1,
        _ => i,
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    pub cartan: RatMatrix,
    pub inverse_cartan: RatMatrix,
    cartan_int: Vec<Vec<i64>>,
    /// Sorted by height, then by root coordinates.
    pub positive_roots: Vec<WeightVec>,
}

impl RootSystem {
    pub fn build(family: Family, rank: usize) -> Result<Self> {
        let edges = dynkin_edges(family, rank)?;
        let l = rank;
        let mut c = vec![vec![0i64; l]; l];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(a, b) in &edges {
            c[a][b] = -1;
            c[b][a] = -1;
        }
        let cartan = RatMatrix::from_i64(&c);
        let inverse_cartan = mat_inverse(&cartan)?;
        let positive_roots = positive_roots_by_closure(&c);
        Ok(RootSystem { family, rank, cartan, inverse_cartan, cartan_int: c, positive_roots })
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.cartan_int[i][j]
    }

    pub fn cartan_rows(&self) -> &[Vec<i64>] {
        &self.cartan_int
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        dynkin_edges(self.family, self.rank).expect("validated at build")
    }

    pub fn simple_root(&self, i: usize) -> WeightVec {
        self.cartan_int[i].clone()
    }

    pub fn fundamental_weight(&self, i: usize) -> WeightVec {
        (0..self.rank).map(|j| i64::from(i == j)).collect()
    }

    /// Sum of the fundamental weights.
    pub fn weyl_vector(&self) -> WeightVec {
        vec![1; self.rank]
    }

    /// `s_i(λ) = λ - λ_i · α_i`
    pub fn reflect(&self, w: &[i64], i: usize) -> WeightVec {
        let k = w[i];
        w.iter().zip(&self.cartan_int[i]).map(|(a, c)| a - k * c).collect()
    }

    /// Breadth-first closure under simple reflections, returned sorted.
    pub fn weyl_orbit(&self, w: &[i64]) -> Vec<WeightVec> {
        let mut seen: BTreeSet<WeightVec> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.to_vec());
        queue.push_back(w.to_vec());
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank {
                if v[i] == 0 {
                    continue;
                }
                let s = self.reflect(&v, i);
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn is_dominant(&self, w: &[i64]) -> bool {
        w.iter().all(|&a| a >= 0)
    }

    /// The dominant representative of the orbit of `w`.
    pub fn to_dominant(&self, w: &[i64]) -> WeightVec {
        let mut v = w.to_vec();
        while let Some(i) = v.iter().position(|&a| a < 0) {
            v = self.reflect(&v, i);
        }
        v
    }

    /// `<λ, μ> = λᵀ C^{-1} μ`
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> Rational {
        let mut s = Rational::zero();
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if b[j] != 0 {
                    s += &self.inverse_cartan[(i, j)] * Rational::from_integer((a[i] * b[j]).into());
                }
            }
        }
        s
    }

    /// Coordinates in the simple-root basis, `λ C^{-1}`.
    pub fn root_coords(&self, w: &[i64]) -> Vec<Rational> {
        (0..self.rank)
            .map(|j| {
                (0..self.rank).fold(Rational::zero(), |acc, i| {
                    acc + &self.inverse_cartan[(i, j)] * Rational::from_integer(w[i].into())
                })
            })
            .collect()
    }

    pub fn all_roots(&self) -> Vec<WeightVec> {
        let mut v = self.positive_roots.clone();
        v.extend(self.positive_roots.iter().map(|r| r.iter().map(|a| -a).collect::<Vec<_>>()));
        v
    }

    pub fn orbit_size(&self, w: &[i64]) -> usize {
        self.weyl_orbit(w).len()
    }
}

fn positive_roots_by_closure(c: &[Vec<i64>]) -> Vec<WeightVec> {
    let l = c.len();
    let to_fw = |r: &[i64]| -> Vec<i64> { (0..l).map(|j| (0..l).map(|i| r[i] * c[i][j]).sum()).collect() };
    let simple: Vec<Vec<i64>> = (0..l).map(|i| (0..l).map(|j| i64::from(i == j)).collect()).collect();
    let mut found: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut frontier = simple;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for r in &frontier {
            let w = to_fw(r);
            for i in 0..l {
                // simply laced: r + α_i is a root iff <r, α_i> = -1
                if w[i] == -1 {
                    let mut s = r.clone();
                    s[i] += 1;
                    if found.insert(s.clone()) {
                        next.push(s);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut roots: Vec<Vec<i64>> = found.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    roots.iter().map(|r| to_fw(r)).collect()
}

/// A root system with a distinguished node `k̄`.
#[derive(Clone, Debug)]
pub struct MarkedPair {
    pub rs: RootSystem,
    /// 0-based index of the marked node.
    pub marked: usize,
    /// `d_a = (C^{-1})_{a, k̄}`
    pub degrees: Vec<Rational>,
    /// `(C^{-1})_{k̄ k̄}`
    pub dhat: Rational,
    pub mckay_order: u64,
}

impl MarkedPair {
    /// `kbar` is 1-based and only used for type A; D and E mark the trivalent node.
    pub fn new(family: Family, rank: usize, kbar: Option<usize>) -> Result<Self> {
        let rs = RootSystem::build(family, rank)?;
        let l = rank;
        let (marked, mckay_order) = match family {
            Family::A => {
                let k = kbar.ok_or(Error::MissingMarkedNode)?;
                if !(1..=l).contains(&k) {
                    return Err(Error::Invalid(format!("marked node {k} out of range 1..={l}")));
                }
                (k - 1, (l + 1) as u64)
            }
            Family::D => (l - 3, 4 * (l as u64 - 2)),
            Family::E => (2, [24, 48, 120][l - 6]),
        };
        let degrees: Vec<Rational> = (0..l).map(|a| rs.inverse_cartan[(a, marked)].clone()).collect();
        let dhat = rs.inverse_cartan[(marked, marked)].clone();
        Ok(MarkedPair { rs, marked, degrees, dhat, mckay_order })
    }

    /// Shorthand for D/E pairs (type A needs [`MarkedPair::new`] with a node).
    pub fn standard(family: Family, rank: usize) -> Result<Self> {
        Self::new(family, rank, None)
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    pub fn family(&self) -> Family {
        self.rs.family
    }

    pub fn name(&self) -> String {
        match self.rs.family {
            Family::A => format!("A{} (k={})", self.rs.rank, self.marked + 1),
            _ => self.rs.name(),
        }
    }

    /// Degrees of `y_1..y_{l+1}` with `d_{l+1} = 0`.
    pub fn extended_degrees(&self) -> Vec<Rational> {
        let mut d = self.degrees.clone();
        d.push(Rational::zero());
        d
    }

    /// The integer `N` with `e^{x_{l+1}} = u^N`: the lcm of the denominators of every
    /// `d_α`, of `1/(2 d̂)` and of `1/2`, so that all fractional powers of `e^{x_{l+1}}`
    /// used downstream are integral powers of `u`.
    pub fn root_order(&self) -> u64 {
        let mut n = num_bigint::BigInt::from(2);
        for d in &self.degrees {
            n = n.lcm(d.denom());
        }
        let half_inv = (Rational::from_integer(2.into()) * &self.dhat).recip();
        n = n.lcm(half_inv.denom());
        u64::try_from(n).expect("root order fits in u64")
    }

    /// Orbit of the marked fundamental weight.
    pub fn marked_weight(&self) -> WeightVec {
        self.rs.fundamental_weight(self.marked)
    }
}

/// `G_ij = δ_ij - δ_{i,j+1} + δ_{i,l-1} δ_{j,l}` (1-based), with `GᵀG = C` for `D_l`.
pub fn dtype_g(l: usize) -> Vec<Vec<i64>> {
    (0..l)
        .map(|i| {
            (0..l).map(|j| i64::from(i == j) - i64::from(i == j + 1) + i64::from(i + 2 == l && j + 1 == l)).collect()
        })
        .collect()
}

/// Lexicographic pairs `i < j` (0-based) indexing the rows of `Θ^±`.
pub fn dtype_pairs(l: usize) -> Vec<(usize, usize)> {
    (0..l).flat_map(|i| (i + 1..l).map(move |j| (i, j))).collect()
}

/// `Θ = [Θ⁺; Θ⁻]`: row `σ(i,j)` of `Θ⁺` is `ε_i + ε_j`, of `Θ⁻` is `ε_i - ε_j`.
pub fn dtype_theta(l: usize) -> Vec<Vec<i64>> {
    let pairs = dtype_pairs(l);
    let row = |i: usize, j: usize, s: i64| -> Vec<i64> {
        (0..l)
            .map(|k| {
                if k == i {
                    1
                } else if k == j {
                    s
                } else {
                    0
                }
            })
            .collect()
    };
    let mut out: Vec<Vec<i64>> = pairs.iter().map(|&(i, j)| row(i, j, 1)).collect();
    out.extend(pairs.iter().map(|&(i, j)| row(i, j, -1)));
    out
}

pub fn dtype_matrices(l: usize) -> Result<(RatMatrix, RatMatrix)> {
    if l < 4 {
        return Err(Error::Unsupported(format!("D{l}")));
    }
    Ok((RatMatrix::from_i64(&dtype_g(l)), RatMatrix::from_i64(&dtype_theta(l))))
}

/// Fundamental-weight coordinates of the root with orthonormal coordinates `e`:
/// `b_m = Σ_k e_k G_km`.
pub fn dtype_root_from_orthonormal(e: &[i64]) -> WeightVec {
    let l = e.len();
    let g = dtype_g(l);
    (0..l).map(|m| (0..l).map(|k| e[k] * g[k][m]).sum()).collect()
}
