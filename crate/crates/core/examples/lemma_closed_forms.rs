//! Per-pole residues of the D-type integrand next to their closed forms.
use weyl_mirror::exactalg::{int, to_pq};
use weyl_mirror::gw::dtype_tau_triple;
use weyl_mirror::lg::{lemma_closed_form, lemma_core, lemma_tags, per_pole_contribution, verify_lemma, Superpotential};
use weyl_mirror::rootsys::{Family, MarkedPair};

fn main() -> weyl_mirror::Result<()> {
    let l = 5;
    let mp = MarkedPair::standard(Family::D, l)?;
    let kappa = [int(2), int(3), int(5), int(7), int(11)];
    let sp = Superpotential::build(&mp, &kappa, &int(1))?;
    let (i, j, k) = (1, 1, 2);
    for tag in lemma_tags(&sp) {
        println!(
            "R[{tag}]_{i}{j}{k} = {} (closed form {})",
            to_pq(&per_pole_contribution(&sp, i, j, k, tag)?),
            to_pq(&lemma_closed_form(&sp, i, j, k, tag)?)
        );
    }
    let r = lemma_core(&sp, i, j, k)?;
    let tau = dtype_tau_triple(l, i, j, k, &kappa)?;
    println!("R_{i}{j}{k} = {}, tau-side = {}", to_pq(&r), to_pq(&tau));
    for l in 4..=7 {
        print!("{}", verify_lemma(l, 5, 3)?.render());
    }
    Ok(())
}
