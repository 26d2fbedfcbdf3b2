//! Invariants of every catalog group: order, degrees, character degrees and fake degrees.

use spets::arith::format::format_laurent;
use spets::group::{default_catalog, load_group};
use spets::unipotent::fake_degrees;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = default_catalog();
    for entry in &catalog.groups {
        let g = load_group(&entry.name, Some(&catalog), 0)?;
        println!("{}: |W| = {}, rank {}, degrees {:?}, {} reflections", g.name(), g.order(), g.rank(), g.degrees(), g.num_reflections());
        let fakes = fake_degrees(&g)?;
        for (d, f) in g.char_table().degrees().iter().zip(&fakes) {
            println!("  phi(1) = {d:<2} fake degree {}", format_laurent(f, "x"));
        }
    }
    Ok(())
}
