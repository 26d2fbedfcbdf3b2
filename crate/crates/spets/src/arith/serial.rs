//! Exact JSON forms of cyclotomic numbers and Laurent polynomials.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{ArithError, CycloNum, LaurentX, RatFun};

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, ArithError> {
    let bad = || ArithError::Parse(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: num_bigint::BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == 0.into() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Power-basis coordinates in the smallest field containing the value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloJson {
    pub order: u32,
    pub coeffs: Vec<String>,
}

impl From<&CycloNum> for CycloJson {
    fn from(c: &CycloNum) -> Self {
        let m = c.minimal_order();
        let d = c.descend(m).expect("minimal field");
        CycloJson { order: m, coeffs: d.coeffs().iter().map(fmt_rational).collect() }
    }
}

impl TryFrom<&CycloJson> for CycloNum {
    type Error = ArithError;
    fn try_from(j: &CycloJson) -> Result<Self, ArithError> {
        let v = j.coeffs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
        CycloNum::from_basis(j.order, v)
    }
}

/// Σ c_k x^{k/denom} as a list of (k, c_k).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentJson {
    pub denom: u32,
    pub terms: Vec<(i64, CycloJson)>,
}

impl From<&LaurentX> for LaurentJson {
    fn from(p: &LaurentX) -> Self {
        LaurentJson { denom: p.denom(), terms: p.terms().map(|(k, c)| (k, CycloJson::from(c))).collect() }
    }
}

impl TryFrom<&LaurentJson> for LaurentX {
    type Error = ArithError;
    fn try_from(j: &LaurentJson) -> Result<Self, ArithError> {
        if j.denom == 0 {
            return Err(ArithError::Parse("denominator 0".into()));
        }
        let terms = j.terms.iter().map(|(k, c)| Ok((*k, CycloNum::try_from(c)?))).collect::<Result<Vec<_>, ArithError>>()?;
        Ok(LaurentX::from_terms(j.denom, terms))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFunJson {
    pub num: LaurentJson,
    pub den: LaurentJson,
}

impl From<&RatFun> for RatFunJson {
    fn from(f: &RatFun) -> Self {
        RatFunJson { num: f.num().into(), den: f.den().into() }
    }
}

impl TryFrom<&RatFunJson> for RatFun {
    type Error = ArithError;
    fn try_from(j: &RatFunJson) -> Result<Self, ArithError> {
        RatFun::new(LaurentX::try_from(&j.num)?, LaurentX::try_from(&j.den)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let c = &CycloNum::root_of_unity(12, 5) + &CycloNum::from_ratio(-3, 7);
        let j = CycloJson::from(&c);
        assert_eq!(CycloNum::try_from(&j).unwrap(), c);
        let p = LaurentX::from_terms(2, [(-1, c.clone()), (3, CycloNum::from_int(4))]);
        let pj = LaurentJson::from(&p);
        let s = serde_json::to_string(&pj).unwrap();
        let back: LaurentJson = serde_json::from_str(&s).unwrap();
        assert_eq!(LaurentX::try_from(&back).unwrap(), p);
    }
}
