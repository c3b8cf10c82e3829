//! E6 comparison of the two product tensors. Pass a point count to skip the certificate,
//! e.g. `cargo run --example e6_duality -- 5`; without it all 151 points are certified.
use weyl_mirror::frobdual::{verify_duality, DualityOptions};
use weyl_mirror::rootsys::{Family, MarkedPair};

fn main() -> weyl_mirror::Result<()> {
    let points = std::env::args().nth(1).and_then(|s| s.parse().ok());
    let mp = MarkedPair::standard(Family::E, 6)?;
    let opts = DualityOptions { points, record_all: false, ..Default::default() };
    print!("{}", verify_duality(&mp, None, &opts)?.render());
    Ok(())
}
