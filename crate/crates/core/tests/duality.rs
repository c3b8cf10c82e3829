use weyl_mirror::error::Error;
use weyl_mirror::exactalg::frac;
use weyl_mirror::frobdual::{
    e6_prepotential, ell_aw, ell_gw, g_matrix, parse_flatmap, sample_points, serialize_flatmap, unit_contraction,
    verify_duality, AwData, DualityOptions,
};
use weyl_mirror::invariants::{ExtendedChart, FlatMap};
use weyl_mirror::rootsys::{Family, MarkedPair};

#[test]
fn e6_tensors_agree_at_sampled_points() {
    let mp = MarkedPair::standard(Family::E, 6).unwrap();
    let data = AwData::e6().unwrap();
    for pt in sample_points(&mp, 3, 5).unwrap() {
        let a = ell_gw(&mp, &pt).unwrap();
        let b = ell_aw(&data, &pt).unwrap();
        assert!(a.mismatches(&b).is_empty());
        let (_, j) = ExtendedChart::new(&mp).jacobian(&pt).unwrap();
        assert_eq!(unit_contraction(&a, &j), g_matrix(&mp, &pt).unwrap());
    }
}

#[test]
fn few_points_without_certificate() {
    let mp = MarkedPair::standard(Family::E, 6).unwrap();
    let opts = DualityOptions { points: Some(4), record_all: false, ..Default::default() };
    let r = verify_duality(&mp, None, &opts).unwrap();
    assert_eq!(r.mismatches, 0);
    assert!(!r.certificate && !r.pass);
    assert_eq!(r.entries_compared, 4 * 343);
}

#[test]
fn other_families_need_data() {
    for (f, r) in [(Family::D, 4), (Family::E, 7)] {
        let mp = MarkedPair::standard(f, r).unwrap();
        assert_eq!(verify_duality(&mp, None, &DualityOptions::default()).err(), Some(Error::DataRequired));
    }
}

#[test]
fn wrong_flat_coordinate_is_caught() {
    let mp = MarkedPair::standard(Family::E, 6).unwrap();
    let text = serialize_flatmap(&FlatMap::e6()).replace("t5 = u^2*W5", "t5 = 2*u^2*W5");
    let data = AwData::new(&mp, e6_prepotential(), parse_flatmap(&text).unwrap()).unwrap();
    let opts = DualityOptions { points: Some(2), record_all: false, ..Default::default() };
    let r = verify_duality(&mp, Some(data), &opts).unwrap();
    assert!(r.mismatches > 0 && !r.pass);
    assert_eq!(r.checks.len(), r.mismatches);
    assert!(r.checks.iter().all(|c| !c.equal && c.lhs != c.rhs));
    assert!(r.checks.len() < 2 * 343);
}

#[test]
fn perturbed_prepotential_fails_admission() {
    let mp = MarkedPair::standard(Family::E, 6).unwrap();
    let mut f = e6_prepotential();
    let c = f.coefficient(&[0, 0, 0, 0, 0, 2], 6, 0);
    f.add_term(vec![0, 0, 0, 0, 0, 2], 6, 0, c * frac(1, 1000));
    let data = AwData::new(&mp, f, FlatMap::e6()).unwrap();
    let opts = DualityOptions { points: Some(1), ..Default::default() };
    assert!(matches!(verify_duality(&mp, Some(data), &opts), Err(Error::Invalid(_))));
}
