//! Schur elements under the spetsial specialisation, exported as Schur-data JSON.

use spets::group::load_group;
use spets::hecke::{SchurData, SchurRegistry};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = load_group("G333", None, 0)?;
    let reg = SchurRegistry::new(&g);
    let whole = g.whole()?;
    for i in 0..whole.table.num_irr() {
        println!("phi{i:<2} generic degree {}", reg.generic_degree(&whole, i)?);
    }
    let data = SchurData::from_registry(&reg)?;
    data.validate(&whole)?;
    println!("{} records, JSON {} bytes", data.characters.len(), data.to_json().len());
    Ok(())
}
