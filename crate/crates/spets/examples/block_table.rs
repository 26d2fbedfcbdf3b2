//! The principal-block table of G(3,3,3) at ℓ = 7, written as CSV and read back.

use spets::blocktable::{BlockContext, PartialTable};
use spets::group::load_group;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = load_group("G333", None, 0)?;
    let ctx = BlockContext::new(&g, 7, 1)?;
    let table = ctx.table()?;
    println!("{} characters on {} classes of 7-elements", table.rows.len(), table.cols.len());
    for (i, d) in table.degrees().iter().enumerate().take(6) {
        println!("  {:<28} degree {d}", table.row_label(i));
    }
    println!("dim B0 = {}", ctx.dim_b0()?);
    let csv = table.to_csv();
    assert_eq!(PartialTable::from_csv(&csv)?, table);
    println!("CSV round trip ok ({} bytes)", csv.len());
    Ok(())
}
