//! The E6 spectral curve in the 27-dimensional representation.
use weyl_mirror::exactalg::{int, to_plain, to_pq};
use weyl_mirror::invariants::EvalPoint;
use weyl_mirror::lg::{default_spectral_weight, e6_lg_eta, e6_pairing_matrix, spectral_poly};
use weyl_mirror::rootsys::{Family, MarkedPair};

fn main() -> weyl_mirror::Result<()> {
    let mp = MarkedPair::standard(Family::E, 6)?;
    let pt = EvalPoint::for_pair(&mp, vec![int(2), int(3), int(5), int(7), int(11), int(13)], int(2))?;
    let sd = spectral_poly(&mp, &default_spectral_weight(&mp), &pt)?;
    println!("orbit size {}, degree in lambda {}", sd.orbit_size, sd.lambda_degree());
    println!("s = {}", to_pq(&sd.shift));
    println!("lambda^2 coefficient: {}", sd.lambda_coefficient(2));
    let m = e6_pairing_matrix()?;
    let eta = e6_lg_eta()?;
    for a in 0..6 {
        let row: Vec<String> = (0..6).map(|b| format!("{:>3}", to_plain(&m[(a, b)]))).collect();
        let e: Vec<String> = (0..6).map(|b| format!("{:>3}", to_plain(&eta[(a, b)]))).collect();
        println!("    {}    |  {}", row.join(" "), e.join(" "));
    }
    Ok(())
}
