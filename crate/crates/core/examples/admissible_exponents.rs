//! Degree bounds, admissible exponent counts and a Vandermonde certificate.
use weyl_mirror::exactalg::to_plain;
use weyl_mirror::frobdual::{admissible_exponents, initial_conditions};
use weyl_mirror::rootsys::{Family, MarkedPair};

fn main() -> weyl_mirror::Result<()> {
    for l in 6..=8 {
        let mp = MarkedPair::standard(Family::E, l)?;
        let (d, s) = admissible_exponents(&mp);
        println!("E{l}: D={} |S_adm|={}", to_plain(&d), s.len());
    }
    let mp = MarkedPair::new(Family::A, 2, Some(1))?;
    let ic = initial_conditions(&mp, 5, 16, |_| true)?;
    println!("A2: {} certified points after {} batch(es)", ic.points.len(), ic.batches);
    Ok(())
}
