//! Round trip of the prepotential and flat-map text formats.
use weyl_mirror::frobdual::{e6_prepotential, parse_flatmap, serialize_flatmap, Prepotential};
use weyl_mirror::invariants::FlatMap;

fn main() -> weyl_mirror::Result<()> {
    let f = e6_prepotential();
    let text = f.serialize();
    println!("{}", text.lines().take(5).collect::<Vec<_>>().join("\n"));
    assert_eq!(Prepotential::parse(&text)?, f);
    let fm = serialize_flatmap(&FlatMap::e6());
    println!("{fm}");
    assert_eq!(parse_flatmap(&fm)?, FlatMap::e6());
    match Prepotential::parse("prepotential E 6\n1 2 | 0 : 1\n") {
        Err(e) => println!("bad file rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
