//! A-type mirror check for every marked node, against the restricted two-torus theory.
use weyl_mirror::exactalg::{frac, int};
use weyl_mirror::lg::verify_mirror;
use weyl_mirror::rootsys::{Family, MarkedPair};

fn main() -> weyl_mirror::Result<()> {
    for l in 1..=4 {
        for k in 1..=l {
            let mp = MarkedPair::new(Family::A, l, Some(k))?;
            print!("{}", verify_mirror(&mp, &int(1), 3, 11)?.render());
        }
    }
    let mp = MarkedPair::new(Family::A, 3, Some(2))?;
    print!("{}", verify_mirror(&mp, &frac(2, 5), 3, 11)?.render());
    Ok(())
}
