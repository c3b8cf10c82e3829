//! Pole orders and residues of one D-type integrand, with the global residue theorem.
use weyl_mirror::exactalg::{int, to_pq};
use weyl_mirror::lg::{pole_orders, residue_budget, upsilon, Superpotential};
use weyl_mirror::rootsys::{Family, MarkedPair};

fn main() -> weyl_mirror::Result<()> {
    let mp = MarkedPair::standard(Family::D, 5)?;
    let sp = Superpotential::build(&mp, &[int(2), int(3), int(5), int(7), int(11)], &int(1))?;
    println!("lambda = {}", sp.lam);
    let (i, j, k) = (2, 2, 3);
    for (tag, order, bound) in pole_orders(&sp, i, j, k)? {
        println!("pole at {tag}: order {order} (bound {bound})");
    }
    let b = residue_budget(&sp, &upsilon(&sp, i, j, k)?)?;
    for (tag, r) in &b.support {
        println!("Res at {tag} = {}", to_pq(r));
    }
    println!("Res at inf = {}", to_pq(&b.infinity));
    println!("critical points = {}", to_pq(&b.critical));
    println!("total = {}", to_pq(&b.total()));
    Ok(())
}
