//! Almost-character scalar products for the pentagon group G(5,5,2) and their
//! polynomial dependence on ℓ^b.

use num_bigint::BigInt;
use num_rational::BigRational;
use spets::group::load_group;
use spets::torus::Torus;
use spets::unipotent::almost::{almost_scalar, polynomiality_check};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = load_group("G552", None, 0)?;
    let torus = Torus::new(&g, 11, 1)?;
    let q = BigRational::from_integer(BigInt::from(12));
    for (i, phi) in g.char_table().values.iter().enumerate() {
        let s = almost_scalar(&torus, phi, 0, &q)?;
        println!("<R_phi{i}, 1_T> = {} (integral: {})", s.value, s.integral);
    }
    let fit = polynomiality_check(&torus, 1, 0, &[1, 2, 3, 4, 5], true)?;
    println!("phi1 as a polynomial in y = 11^b: coefficients {:?}, held out {:?}, ok {}", fit.fit, fit.held_out, fit.passed());
    Ok(())
}
