//! LG dual structure constants of the D-type Toda model against the GW side.
use weyl_mirror::exactalg::int;
use weyl_mirror::lg::{verify_d_eta, verify_mirror};
use weyl_mirror::rootsys::{Family, MarkedPair};

fn main() -> weyl_mirror::Result<()> {
    for l in 4..=6 {
        let mp = MarkedPair::standard(Family::D, l)?;
        print!("{}", verify_mirror(&mp, &int(1), 3, 7)?.render());
        print!("{}", verify_d_eta(l, &int(2), 3, 7)?.render());
    }
    Ok(())
}
