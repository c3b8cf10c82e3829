//! Unit search, WDVV brackets and the raised product tensor.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{mat_inverse, RatMatrix, Rational, Tensor3};

use super::prepotential::{FlatPoint, Prepotential};

/// The first coordinate direction `e` (0-based) for which every `∂_e∂_a∂_b F` is constant
/// and the constant Hessian is nondegenerate, with that Hessian.
pub fn find_unit_and_eta(f: &Prepotential) -> Result<(usize, RatMatrix)> {
    let n = f.nflat();
    'dir: for e in 0..n {
        let fe = f.derivative(e);
        let mut eta = RatMatrix::zeros(n, n);
        for a in 0..n {
            let fea = fe.derivative(a);
            for b in a..n {
                match fea.derivative(b).as_constant() {
                    Some(c) => {
                        eta[(a, b)] = c.clone();
                        eta[(b, a)] = c;
                    }
                    None => continue 'dir,
                }
            }
        }
        if mat_inverse(&eta).is_ok() {
            return Ok((e, eta));
        }
    }
    Err(Error::NoUnitDirection)
}

/// Summary of all WDVV brackets at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WdvvResidual {
    /// Largest `|numerator|` over all brackets; zero iff every bracket vanishes.
    pub max_abs_numerator: BigInt,
    pub nonzero: usize,
    pub brackets: usize,
}

impl WdvvResidual {
    pub fn vanishes(&self) -> bool {
        self.nonzero == 0
    }
}

/// `Σ_{E,F} c_{ABE} η^{EF} c_{FMN} − c_{AME} η^{EF} c_{FBN}` over all `A,B,M,N`.
pub fn wdvv_residual(f: &Prepotential, eta: &RatMatrix, pt: &FlatPoint) -> Result<WdvvResidual> {
    let inv = mat_inverse(eta)?;
    let c = f.third_derivatives(pt)?;
    let n = f.nflat();
    // x[A][B][F] = Σ_E c_{ABE} η^{EF}
    let id = RatMatrix::identity(n);
    let x = c.transform(&id, &id, &inv);
    let mut out = WdvvResidual { max_abs_numerator: BigInt::zero(), nonzero: 0, brackets: 0 };
    for a in 0..n {
        for b in 0..n {
            for m in 0..n {
                for nn in 0..n {
                    let mut s = Rational::zero();
                    for ff in 0..n {
                        s += x.get(a, b, ff) * c.get(ff, m, nn) - x.get(a, m, ff) * c.get(ff, b, nn);
                    }
                    out.brackets += 1;
                    if !s.is_zero() {
                        out.nonzero += 1;
                        let num = s.numer().abs();
                        if num > out.max_abs_numerator {
                            out.max_abs_numerator = num;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `(c)^{AB}_C = Σ η^{AM} η^{BN} ∂³F/∂t_M∂t_N∂t_C`.
pub fn c_tensor_upper(f: &Prepotential, eta: &RatMatrix, pt: &FlatPoint) -> Result<Tensor3> {
    let inv = mat_inverse(eta)?;
    let id = RatMatrix::identity(f.nflat());
    Ok(f.third_derivatives(pt)?.transform(&inv, &inv, &id))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{frac, int};
    use crate::frobdual::prepotential::e6_prepotential;

    #[test]
    fn toy_unit() {
        let mut f = Prepotential::new(1);
        f.add_term(vec![2], 0, 1, frac(1, 2));
        let (e, eta) = find_unit_and_eta(&f).unwrap();
        assert_eq!(e, 0);
        assert_eq!(eta, RatMatrix::from_i64(&[vec![0, 1], vec![1, 0]]));
        // for ½ t1 t2² the t1 Hessian is constant but degenerate
        let mut g = Prepotential::new(1);
        g.add_term(vec![1], 0, 2, frac(1, 2));
        assert_eq!(find_unit_and_eta(&g).unwrap().0, 1);
    }

    #[test]
    fn quartic_has_no_unit() {
        let mut f = Prepotential::new(1);
        f.add_term(vec![4], 0, 0, int(1));
        assert_eq!(find_unit_and_eta(&f).err(), Some(Error::NoUnitDirection));
    }

    #[test]
    fn e6_unit_and_eta() {
        let (e, eta) = find_unit_and_eta(&e6_prepotential()).unwrap();
        assert_eq!(e, 2);
        let mut expect = RatMatrix::zeros(7, 7);
        for (a, b, v) in [(0, 1, frac(-1, 36)), (3, 4, frac(1, 36)), (5, 5, frac(1, 4)), (2, 6, frac(1, 2))] {
            expect[(a, b)] = v.clone();
            expect[(b, a)] = v;
        }
        assert_eq!(eta, expect);
    }

    #[test]
    fn two_coordinates_are_associative() {
        let mut f = Prepotential::new(1);
        f.add_term(vec![2], 0, 1, frac(1, 2));
        f.add_term(vec![0], 2, 0, frac(5, 7));
        f.add_term(vec![0], 0, 3, int(1));
        let eta = RatMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        let pt = FlatPoint { t: vec![frac(2, 3)], s: int(5), t_last: Some(int(1)) };
        assert!(wdvv_residual(&f, &eta, &pt).unwrap().vanishes());
        f.add_term(vec![3], 1, 0, int(1));
        let r = wdvv_residual(&f, &eta, &pt).unwrap();
        assert!(!r.vanishes() && r.max_abs_numerator > BigInt::zero());
    }

    #[test]
    fn raised_tensor_contracts_to_eta_inverse() {
        let f = e6_prepotential();
        let (e, eta) = find_unit_and_eta(&f).unwrap();
        let pt = FlatPoint::new(vec![int(1), frac(1, 2), int(-3), int(2), frac(5, 3), int(1)], frac(2, 7));
        let c = c_tensor_upper(&f, &eta, &pt).unwrap();
        let inv = mat_inverse(&eta).unwrap();
        for a in 0..7 {
            for b in 0..7 {
                // c^{AB}_C with C = unit gives η^{AB}
                assert_eq!(c.get(a, b, e), &inv[(a, b)]);
            }
        }
    }
}
