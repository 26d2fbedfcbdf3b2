//! Exact scalars: cyclotomic numbers, Laurent polynomials in x^{1/z},
//! rational functions and residues modulo prime powers.

pub mod cyclo;
pub mod expr;
pub mod format;
pub mod laurent;
pub mod linalg;
pub mod qpoly;
pub mod ratfun;
pub mod residue;
pub mod serial;

pub use cyclo::CycloNum;
pub use laurent::LaurentX;
pub use ratfun::RatFun;
pub use residue::ResidueEmbedding;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("x^(1/{denom}) is not rational at the requested point")]
    FractionalPower { denom: u32 },
    #[error("evaluation point must be positive")]
    NonPositiveArgument,
    #[error("{len} coordinates do not fit the cyclotomic field of order {order}")]
    BadCoordinates { order: u32, len: usize },
    #[error("denominator divisible by the residue characteristic")]
    BadDenominator,
    #[error("no registered residue for irrationalities of order {order}")]
    MissingRoot { order: u32 },
    #[error("invalid modulus {ell}^{a}")]
    BadModulus { ell: u64, a: u32 },
    #[error("value is not an algebraic integer")]
    NotIntegral,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Whether c/ℓ^k is integral in the power basis (c must itself be integral).
pub fn ell_valuation_at_least(c: &CycloNum, ell: u32, k: u32) -> Result<bool, ArithError> {
    if !c.is_integral() {
        return Err(ArithError::NotIntegral);
    }
    Ok(match c.p_valuation(ell) {
        None => true,
        Some(v) => v >= k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_examples() {
        assert!(ell_valuation_at_least(&CycloNum::from_int(343), 7, 3).unwrap());
        let c = &CycloNum::from_int(7) * &(&CycloNum::one() + &CycloNum::root_of_unity(3, 1));
        assert!(ell_valuation_at_least(&c, 7, 1).unwrap());
        assert!(ell_valuation_at_least(&CycloNum::from_int(24), 3, 1).unwrap());
        assert!(!ell_valuation_at_least(&CycloNum::from_int(24), 3, 2).unwrap());
        assert_eq!(ell_valuation_at_least(&CycloNum::from_ratio(1, 2), 3, 0), Err(ArithError::NotIntegral));
    }
}
