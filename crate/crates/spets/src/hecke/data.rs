//! Schur data files: `{ group_type, parameters, characters: [{label, num_coeffs, den_coeffs, z}] }`.

use serde::{Deserialize, Serialize};

use super::{HeckeError, SchurRegistry};
use crate::arith::serial::LaurentJson;
use crate::arith::{CycloNum, LaurentX, RatFun};
use crate::group::SubgroupData;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurRecord {
    pub label: String,
    pub num_coeffs: LaurentJson,
    pub den_coeffs: LaurentJson,
    pub z: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurData {
    pub group_type: String,
    pub parameters: Vec<String>,
    pub characters: Vec<SchurRecord>,
}

impl SchurData {
    /// Export the Schur elements of a whole group; labels follow table row order.
    pub fn from_registry(reg: &SchurRegistry<'_>) -> Result<Self, HeckeError> {
        let w = reg.group().whole()?;
        let s = reg.schur(&w)?;
        let characters = s
            .iter()
            .enumerate()
            .map(|(i, f)| SchurRecord {
                label: format!("chi{i}"),
                num_coeffs: f.num().into(),
                den_coeffs: f.den().into(),
                z: f.num().denom().max(f.den().denom()),
            })
            .collect();
        Ok(SchurData { group_type: reg.group().name().to_string(), parameters: vec!["x".into(), "-1".into()], characters })
    }

    pub fn values(&self) -> Result<Vec<RatFun>, HeckeError> {
        self.characters
            .iter()
            .map(|r| {
                let num = LaurentX::try_from(&r.num_coeffs)?;
                let den = LaurentX::try_from(&r.den_coeffs)?;
                Ok(RatFun::new(num, den)?)
            })
            .collect()
    }

    /// Checks the x=1 law |W|/φ(1) against a group table in row order.
    pub fn validate(&self, sub: &SubgroupData) -> Result<(), HeckeError> {
        let vals = self.values()?;
        if vals.len() != sub.table.num_irr() {
            return Err(HeckeError::Validation(format!(
                "{}: {} records for {} characters",
                self.group_type,
                vals.len(),
                sub.table.num_irr()
            )));
        }
        for (i, f) in vals.iter().enumerate() {
            let want = CycloNum::from_ratio(sub.order() as i64, sub.table.degree(i));
            if f.at_one()? != want {
                return Err(HeckeError::Validation(format!("{}: record {} fails the x=1 law", self.group_type, i)));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable")
    }

    pub fn from_json(s: &str) -> Result<Self, HeckeError> {
        serde_json::from_str(s).map_err(|e| HeckeError::Validation(format!("schur data: {e}")))
    }
}
