//! Frobenius congruences and restriction integrality for G(3,3,3), ℓ = 7, q = 8.

use spets::blocktable::BlockContext;
use spets::group::load_group;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = load_group("G333", None, 0)?;
    let ctx = BlockContext::new(&g, 7, 1)?;
    let table = ctx.table()?;
    let frob = ctx.frobenius_check(&table, 8)?;
    println!("Frobenius: need 7-adic valuation >= {}", frob.required);
    for r in frob.rows.iter().take(8) {
        println!("  {:<28} valuation {:?}", r.label, r.valuation);
    }
    println!("all {} rows pass: {}", frob.rows.len(), frob.passed());
    let res = ctx.restriction_check(&table, 8)?;
    println!("restriction to T integral for every character: {}", res.passed());
    Ok(())
}
