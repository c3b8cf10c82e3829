//! Fundamental characters and the Weyl denominator at a rational point.
use weyl_mirror::exactalg::{frac, to_pq};
use weyl_mirror::invariants::{characters, weyl_denominator_at, EvalPoint, ExtendedChart};
use weyl_mirror::rootsys::{Family, MarkedPair};

fn main() -> weyl_mirror::Result<()> {
    let mp = MarkedPair::standard(Family::E, 6)?;
    let chars = characters(&mp)?;
    for (i, w) in chars.iter().enumerate() {
        println!("W{}: {} terms, dimension {}", i + 1, w.len(), to_pq(&w.coefficient_sum()));
    }
    let q = vec![frac(2, 3), frac(5, 7), frac(3, 2), frac(7, 5), frac(11, 13), frac(13, 11)];
    println!("delta(q) = {}", to_pq(&weyl_denominator_at(&mp.rs, &q)?));
    let pt = EvalPoint::for_pair(&mp, q, frac(3, 5))?;
    let (y, _) = ExtendedChart::new(&mp).jacobian(&pt)?;
    for (i, v) in y.iter().enumerate() {
        println!("y{} = {}", i + 1, to_pq(v));
    }
    Ok(())
}
