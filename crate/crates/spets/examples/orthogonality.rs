//! Block orthogonality and the x = 1 specialisation for the cyclic group μ₃ at ℓ = 7.

use spets::blocktable::BlockContext;
use spets::group::load_group;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = load_group("mu3", None, 0)?;
    let ctx = BlockContext::new(&g, 7, 1)?;
    let table = ctx.table()?;
    for o in ctx.orthogonality_all(&table)? {
        println!("{} {}: {} (expected {}) {}", o.t, o.t2, o.value, o.expected, if o.pass { "ok" } else { "FAIL" });
    }
    let x1 = ctx.specialise_x1_check(&table)?;
    println!("x = 1: {} values checked, {} mismatches", x1.checked, x1.mismatches.len());
    Ok(())
}
