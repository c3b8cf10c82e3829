use num_traits::{One, Zero};
use proptest::prelude::*;

use weyl_mirror::exactalg::{determinant, frac, int, pow_i, RatMatrix, Rational};
use weyl_mirror::frobdual::{ell_aw, ell_gw, g_matrix, AwData};
use weyl_mirror::gw::{gw_triple, GwContext};
use weyl_mirror::invariants::{monomial, reflect_point, weyl_denominator_at, EvalPoint, ExtendedChart};
use weyl_mirror::lg::{dual_core, lemma_core, lg_dual_tensor, pole_orders, residue_budget, upsilon, Superpotential};
use weyl_mirror::rootsys::{dtype_matrices, Family, MarkedPair};

const PRIMES: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn ratio() -> impl Strategy<Value = Rational> {
    (prop::sample::select(PRIMES.to_vec()), prop::sample::select(PRIMES.to_vec()))
        .prop_map(|(a, b)| Rational::new(a.into(), b.into()))
}

fn ratios(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(ratio(), n)
}

/// A marked pair of type A (any node) or D, with rank at most 6.
fn lg_pair() -> impl Strategy<Value = MarkedPair> {
    prop_oneof![
        (1usize..=4)
            .prop_flat_map(|l| (Just(l), 1..=l))
            .prop_map(|(l, k)| MarkedPair::new(Family::A, l, Some(k)).unwrap()),
        (4usize..=6).prop_map(|l| MarkedPair::standard(Family::D, l).unwrap()),
    ]
}

fn superpotential(mp: &MarkedPair, q: &[Rational], nu: &Rational) -> Option<Superpotential> {
    Superpotential::from_point(mp, &q[..mp.rank()], nu).ok()
}

fn idx(l: usize) -> impl Strategy<Value = (usize, usize, usize)> {
    (1..=l + 1, 1..=l + 1, 1..=l + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn residues_of_every_integrand_sum_to_zero(mp in lg_pair(), q in ratios(6), nu in ratio(), t in idx(6)) {
        let l = mp.rank();
        let (i, j, k) = (t.0.min(l + 1), t.1.min(l + 1), t.2.min(l + 1));
        if let Some(sp) = superpotential(&mp, &q, &nu) {
            let f = upsilon(&sp, i, j, k).unwrap();
            let b = residue_budget(&sp, &f).unwrap();
            prop_assert_eq!(b.total(), Rational::zero());
        }
    }

    #[test]
    fn pole_orders_respect_the_bounds(mp in lg_pair(), q in ratios(6), t in idx(6)) {
        let l = mp.rank();
        let (i, j, k) = (t.0.min(l + 1), t.1.min(l + 1), t.2.min(l + 1));
        if let Some(sp) = superpotential(&mp, &q, &int(1)) {
            for (tag, order, bound) in pole_orders(&sp, i, j, k).unwrap() {
                prop_assert!(order <= bound, "{} at {}: {} > {}", mp.name(), tag, order, bound);
            }
        }
    }

    #[test]
    fn rescaling_lambda_changes_nothing(mp in lg_pair(), q in ratios(6), c in ratio(), neg in any::<bool>()) {
        let c = if neg { -c } else { c };
        if let Some(sp) = superpotential(&mp, &q, &int(1)) {
            prop_assert_eq!(lg_dual_tensor(&sp.rescaled(&c)).unwrap(), lg_dual_tensor(&sp).unwrap());
        }
    }

    #[test]
    fn lemma_core_is_the_unweighted_dual_core(l in 4usize..=6, q in ratios(6), nu in ratio(), t in idx(6)) {
        let mp = MarkedPair::standard(Family::D, l).unwrap();
        let (i, j, k) = (t.0.min(l + 1), t.1.min(l + 1), t.2.min(l + 1));
        if let Some(sp) = superpotential(&mp, &q, &nu) {
            let extra = [i, j, k].iter().filter(|&&a| a == l + 1).count() as i64;
            let two_nu = int(2) * &nu;
            prop_assert_eq!(dual_core(&sp, i, j, k).unwrap(), lemma_core(&sp, i, j, k).unwrap() * pow_i(&two_nu, 1 - extra));
        }
    }

    #[test]
    fn gw_triple_is_the_third_derivative_of_the_potential(
        fam in prop_oneof![Just((Family::D, 5)), Just((Family::E, 6)), Just((Family::A, 3))],
        q in ratios(6),
        t in idx(6),
    ) {
        let (f, l) = fam;
        let mp = MarkedPair::new(f, l, (f == Family::A).then_some(2)).unwrap();
        let (i, j, k) = (t.0.min(l), t.1.min(l), t.2.min(l));
        let pt = EvalPoint::for_pair(&mp, q[..l].to_vec(), int(2)).unwrap();
        let ctx = GwContext::one_torus(&mp);
        if let Ok(v) = gw_triple(&ctx, i, j, k, &pt) {
            // F⁰ cubic −(1/6) Σ <β,x>³ plus F⁺ = −2 Σ Li₃(e^{−<β,x>}), with Li₀(z) = z/(1−z)
            let mut expect = Rational::zero();
            for b in &mp.rs.positive_roots {
                let w = int(b[i - 1] * b[j - 1] * b[k - 1]);
                if w.is_zero() {
                    continue;
                }
                let z = monomial(b).eval(&pt.q).unwrap().recip();
                let li0 = &z / (Rational::one() - &z);
                expect -= &w * (Rational::one() + int(2) * li0);
            }
            prop_assert_eq!(v, expect);
        }
    }

    #[test]
    fn gw_triple_is_symmetric(q in ratios(5), t in idx(5)) {
        let mp = MarkedPair::standard(Family::D, 5).unwrap();
        let pt = EvalPoint::for_pair(&mp, q, int(3)).unwrap();
        let ctx = GwContext::one_torus(&mp);
        let (i, j, k) = t;
        if let Ok(v) = gw_triple(&ctx, i, j, k, &pt) {
            for (a, b, c) in [(j, i, k), (k, j, i), (i, k, j), (j, k, i)] {
                prop_assert_eq!(&gw_triple(&ctx, a, b, c, &pt).unwrap(), &v);
            }
        }
    }

    #[test]
    fn weyl_denominator_is_anti_invariant(
        fam in prop_oneof![Just((Family::A, 3)), Just((Family::D, 5)), Just((Family::E, 6))],
        q in ratios(6),
        s in 0usize..6,
    ) {
        let (f, l) = fam;
        let rs = MarkedPair::new(f, l, (f == Family::A).then_some(1)).unwrap().rs;
        let q = &q[..l];
        let i = s % l;
        let d = weyl_denominator_at(&rs, q).unwrap();
        prop_assert_eq!(weyl_denominator_at(&rs, &reflect_point(&rs, q, i)).unwrap(), -d);
    }

    #[test]
    fn weyl_denominator_vanishes_on_walls(
        fam in prop_oneof![Just((Family::A, 4)), Just((Family::D, 5)), Just((Family::E, 6))],
        s in ratios(6),
        wall in 0usize..6,
    ) {
        let (f, l) = fam;
        let rs = MarkedPair::new(f, l, (f == Family::A).then_some(1)).unwrap().rs;
        let i = wall % l;
        // q_m = s_m² off the wall node; q_i = Π_{m ~ i} s_m makes e^{α_i} = 1
        let mut q: Vec<Rational> = s[..l].iter().map(|x| x * x).collect();
        q[i] = (0..l).filter(|&m| rs.c(i, m) == -1).fold(Rational::one(), |acc, m| acc * &s[m]);
        prop_assert!(monomial(&rs.simple_root(i)).eval(&q).unwrap().is_one());
        prop_assert_eq!(weyl_denominator_at(&rs, &q).unwrap(), Rational::zero());
    }

    #[test]
    fn g_transpose_g_is_cartan(l in 4usize..=9) {
        let (g, _) = dtype_matrices(l).unwrap();
        let rs = MarkedPair::standard(Family::D, l).unwrap().rs;
        prop_assert_eq!(&(&g.transpose() * &g), &rs.cartan);
    }
}

fn scale_law(mp: &MarkedPair, a: usize, b: usize, e: usize) -> Rational {
    let d = |x: usize| if x < mp.rank() { mp.degrees[x].clone() } else { Rational::zero() };
    (d(a) + d(b) - d(e)) * Rational::from_integer(mp.root_order().into())
}

fn check_scaling(
    mp: &MarkedPair,
    t1: &weyl_mirror::exactalg::Tensor3,
    t2: &weyl_mirror::exactalg::Tensor3,
    c: &Rational,
) {
    let n = mp.rank() + 1;
    for a in 0..n {
        for b in 0..n {
            for e in 0..n {
                let s = scale_law(mp, a, b, e);
                assert!(s.is_integer());
                let pw = s.to_integer().try_into().unwrap();
                assert_eq!(t2.get(a, b, e), &(t1.get(a, b, e) * pow_i(c, pw)), "({a},{b},{e})");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3))]

    #[test]
    fn both_product_tensors_are_quasi_homogeneous(q in ratios(6), u in ratio(), c in ratio()) {
        let mp = MarkedPair::standard(Family::E, 6).unwrap();
        let data = AwData::e6().unwrap();
        let p1 = EvalPoint::for_pair(&mp, q, u.clone()).unwrap();
        let p2 = p1.with_u(&u * &c);
        if let (Ok(g1), Ok(g2)) = (ell_gw(&mp, &p1), ell_gw(&mp, &p2)) {
            check_scaling(&mp, &g1, &g2, &c);
            let (a1, a2) = (ell_aw(&data, &p1).unwrap(), ell_aw(&data, &p2).unwrap());
            check_scaling(&mp, &a1, &a2, &c);
        }
    }

    #[test]
    fn intersection_form_is_symmetric_with_weight(
        fam in prop_oneof![Just((Family::D, 4)), Just((Family::D, 5)), Just((Family::E, 6))],
        q in ratios(6),
        u in ratio(),
        c in ratio(),
    ) {
        let (f, l) = fam;
        let mp = MarkedPair::standard(f, l).unwrap();
        let p1 = EvalPoint::for_pair(&mp, q[..l].to_vec(), u.clone()).unwrap();
        let p2 = p1.with_u(&u * &c);
        let (g1, g2) = (g_matrix(&mp, &p1).unwrap(), g_matrix(&mp, &p2).unwrap());
        prop_assert!(g1.is_symmetric());
        let n = l + 1;
        let d = |x: usize| if x < l { mp.degrees[x].clone() } else { Rational::zero() };
        let expect = RatMatrix::from_fn(n, n, |a, b| {
            let s = (d(a) + d(b)) * Rational::from_integer(mp.root_order().into());
            &g1[(a, b)] * pow_i(&c, s.to_integer().try_into().unwrap())
        });
        prop_assert_eq!(g2, expect);
    }
}

fn invariant_pair() -> impl Strategy<Value = MarkedPair> {
    prop_oneof![
        Just(MarkedPair::new(Family::A, 3, Some(2)).unwrap()),
        Just(MarkedPair::standard(Family::D, 5).unwrap()),
        Just(MarkedPair::standard(Family::E, 6).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn extended_coordinates_are_quasi_homogeneous(mp in invariant_pair(), q in ratios(6), u in ratio(), c in ratio()) {
        let l = mp.rank();
        let chart = ExtendedChart::new(&mp);
        let p1 = EvalPoint::for_pair(&mp, q[..l].to_vec(), u.clone()).unwrap();
        let (y1, _) = chart.jacobian(&p1).unwrap();
        let (y2, _) = chart.jacobian(&p1.with_u(&u * &c)).unwrap();
        let n = Rational::from_integer(mp.root_order().into());
        for a in 0..l {
            let e = (&n * &mp.degrees[a]).to_integer().try_into().unwrap();
            prop_assert_eq!(&y2[a], &(&y1[a] * pow_i(&c, e)));
        }
    }

    #[test]
    fn invariants_are_flat_across_every_wall(mp in invariant_pair(), q in ratios(6), pick in 0usize..120) {
        let l = mp.rank();
        let rs = &mp.rs;
        let b = &rs.positive_roots[pick % rs.positive_roots.len()];
        // solve e^{<β,x>} = 1 for a coordinate where β has weight ±1
        let r = b.iter().position(|x| x.abs() == 1).unwrap();
        let mut q = q[..l].to_vec();
        q[r] = Rational::one();
        let rest = monomial(b).eval(&q).unwrap();
        q[r] = pow_i(&rest, -b[r]);
        prop_assert!(monomial(b).eval(&q).unwrap().is_one());
        let pt = EvalPoint::for_pair(&mp, q, int(2)).unwrap();
        let (_, j) = ExtendedChart::new(&mp).jacobian(&pt).unwrap();
        let dir = rs.root_coords(b);
        for alpha in 0..l {
            let d = (0..l).fold(Rational::zero(), |acc, a| acc + &dir[a] * &j[(alpha, a)]);
            prop_assert!(d.is_zero(), "{} y{} along {:?}", mp.name(), alpha + 1, b);
        }
    }

    #[test]
    fn jacobian_determinant_is_the_weyl_denominator(mp in invariant_pair(), q in ratios(6), u in ratio(), s in 0usize..6) {
        let l = mp.rank();
        let chart = ExtendedChart::new(&mp);
        let n = Rational::from_integer(mp.root_order().into());
        let sum_d = mp.degrees.iter().fold(Rational::zero(), |a, d| a + d);
        let e: i64 = (&n * &sum_d).to_integer().try_into().unwrap();
        let ratio_at = |q: Vec<Rational>, u: Rational| -> Option<Rational> {
            let delta = weyl_denominator_at(&mp.rs, &q).unwrap();
            if delta.is_zero() {
                return None;
            }
            let (_, j) = chart.jacobian(&EvalPoint::for_pair(&mp, q, u.clone()).unwrap()).unwrap();
            Some(determinant(&j) / (pow_i(&u, e) * delta))
        };
        let reference: Vec<Rational> = (0..l).map(|m| frac(PRIMES[m], PRIMES[m + 1])).collect();
        let c = ratio_at(reference, int(3)).unwrap();
        prop_assert!(!c.is_zero());
        let q = q[..l].to_vec();
        if let Some(r) = ratio_at(q.clone(), u.clone()) {
            prop_assert_eq!(&r, &c);
            // δ² is Weyl invariant
            let d = weyl_denominator_at(&mp.rs, &q).unwrap();
            let moved = reflect_point(&mp.rs, &q, s % l);
            let dm = weyl_denominator_at(&mp.rs, &moved).unwrap();
            prop_assert_eq!(&dm * &dm, &d * &d);
        }
    }
}
