//! Torus points by centraliser type, and their Orlik–Solomon product form.

use spets::group::load_group;
use spets::torus::{os_fit, Torus};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = load_group("G333", None, 0)?;
    let torus = Torus::new(&g, 7, 1)?;
    println!("{} points in {} orbits", torus.size(), torus.orbits().len());
    for c in torus.count_by_parabolic() {
        println!("  |W0| = {:<3} dim Fix = {} copies {:<2} points {}", c.order, c.fix_dim, c.copies, c.total);
    }
    let fit = os_fit(&g, 7, 1)?;
    for r in &fit.rows {
        println!("  |W0| = {:<3} per-copy counts {:?} -> b = {:?}", r.order, r.counts, r.b());
    }
    Ok(())
}
