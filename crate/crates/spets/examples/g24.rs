//! The unipotent characters of G24(q) on 2-elements, compared with the
//! published table, and the Frobenius congruences for q = 5, 13, 17.

use spets::arith::format::format_laurent;
use spets::unipotent::g24;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = g24::load(g24::read_bundle(None)?, 0)?;
    let table = g24::g24_table(&data)?;
    println!("{}", table.cols.join(" | "));
    for (label, row) in table.rows.iter().zip(&table.values).take(4) {
        let cells: Vec<String> = row.iter().map(|p| format_laurent(p, "q")).collect();
        println!("{label}: {}", cells.join(" | "));
    }
    for d in g24::compare_published(&data, &table) {
        println!("differs at {} / {}: computed {}, printed {}", d.row, d.col, d.computed, d.published);
    }
    for q in [5, 13, 17] {
        let f = g24::g24_frobenius(&data, q)?;
        println!("q = {q}: l = {}, need nu_2 >= {}, all pass: {}", f.l, f.required, f.passed());
    }
    Ok(())
}
