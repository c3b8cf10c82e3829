//! Cartan data, positive roots and marked-pair degrees for each ADE family.
use weyl_mirror::exactalg::to_pq;
use weyl_mirror::rootsys::{Family, MarkedPair};

fn main() -> weyl_mirror::Result<()> {
    for (fam, l, kbar) in [(Family::A, 3, Some(2)), (Family::D, 5, None), (Family::E, 6, None), (Family::E, 8, None)] {
        let mp = MarkedPair::new(fam, l, kbar)?;
        let degrees: Vec<String> = mp.degrees.iter().map(to_pq).collect();
        println!(
            "{}: {} positive roots, marked node {}, |G| = {}, N = {}, degrees [{}]",
            mp.name(),
            mp.rs.positive_roots.len(),
            mp.marked + 1,
            mp.mckay_order,
            mp.root_order(),
            degrees.join(", ")
        );
        for row in mp.rs.cartan_rows() {
            println!("    {row:?}");
        }
    }
    Ok(())
}
