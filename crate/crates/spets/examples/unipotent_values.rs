//! Principal-series unipotent characters of G(5,5,2) and their values on
//! centralisers of 11-elements.

use spets::group::load_group;
use spets::hecke::SchurRegistry;
use spets::torus::Torus;
use spets::unipotent::{principal_series, unipotent_value, SubCoset};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = load_group("G552", None, 0)?;
    let reg = SchurRegistry::new(&g);
    let torus = Torus::new(&g, 11, 1)?;
    let reps: Vec<u32> = torus.orbits().iter().map(|o| o[0]).take(3).collect();
    for chi in principal_series(&g, &reg)? {
        let vals: Vec<String> = reps
            .iter()
            .map(|&t| unipotent_value(&g, &chi, &SubCoset::split(torus.stabiliser_of(t))).map(|v| v.to_string()))
            .collect::<Result<_, _>>()?;
        println!("{:<6} degree {:<28} values {}", chi.label, chi.degree.to_string(), vals.join(", "));
    }
    Ok(())
}
