//! Unit direction, pairing and WDVV residual of the built-in E6 prepotential.
use weyl_mirror::exactalg::{frac, int, to_pq};
use weyl_mirror::frobdual::{e6_prepotential, find_unit_and_eta, wdvv_residual, FlatPoint};

fn main() -> weyl_mirror::Result<()> {
    let f = e6_prepotential();
    let (unit, eta) = find_unit_and_eta(&f)?;
    println!("{} terms, unit t{}", f.terms.len(), unit + 1);
    for a in 0..7 {
        let row: Vec<String> = (0..7).map(|b| to_pq(&eta[(a, b)])).collect();
        println!("    {}", row.join(" "));
    }
    let mut pt = FlatPoint::new(vec![frac(1, 2), int(3), frac(-2, 5), int(7), frac(1, 3), int(2)], frac(3, 2));
    pt.t_last = Some(int(1));
    let r = wdvv_residual(&f, &eta, &pt)?;
    println!("WDVV: {} brackets, {} nonzero", r.brackets, r.nonzero);
    let mut g = f.clone();
    g.add_term(vec![1, 0, 0, 0, 0, 1], 1, 0, frac(1, 7));
    let r = wdvv_residual(&g, &eta, &pt)?;
    println!("perturbed: {} nonzero, largest numerator {}", r.nonzero, r.max_abs_numerator);
    Ok(())
}
