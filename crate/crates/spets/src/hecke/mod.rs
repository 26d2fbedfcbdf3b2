//! Spetsial specialisations, Schur elements of parabolic subgroups and the
//! resulting principal-block degrees.

pub mod ak;
pub mod data;
pub mod providers;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;
use thiserror::Error;

use crate::arith::{ArithError, CycloNum, LaurentX, RatFun};
use crate::group::{GroupError, ReflectionGroup, SubgroupData};

pub use data::SchurData;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeckeError {
    #[error("no Schur element provider for {0}")]
    NoProvider(String),
    #[error("Schur data failed validation: {0}")]
    Validation(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Exponents a_{r,j} of the admissible specialisation u_{r,j} ↦ ζ_{o(r)}^j x^{a_{r,j}}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialisationMap {
    /// (representative distinguished reflection, its order, exponents a_{r,0..o−1}).
    pub classes: Vec<(usize, u32, Vec<i64>)>,
    pub z: u32,
}

impl SpecialisationMap {
    /// Parameters u_{r,0..o−1} for class index `i`.
    pub fn parameters(&self, i: usize) -> Vec<LaurentX> {
        let (_, o, ref a) = self.classes[i];
        (0..o).map(|j| LaurentX::monomial(CycloNum::root_of_unity(o, j as i64), a[j as usize])).collect()
    }
}

/// The spetsial choice u_{r,0} ↦ x and u_{r,j} ↦ ζ^j for j ≥ 1.
pub fn spetsial_specialisation(w: &ReflectionGroup) -> SpecialisationMap {
    let mut seen = Vec::new();
    let mut classes = Vec::new();
    for &r in w.reflections() {
        let c = w.class_of(r);
        if seen.contains(&c) || !w.is_distinguished(r) {
            continue;
        }
        seen.push(c);
        let o = w.abstract_group().element_order(r);
        let mut a = vec![0i64; o as usize];
        a[0] = 1;
        classes.push((r, o, a));
    }
    SpecialisationMap { classes, z: 1 }
}

/// Schur data for groups outside the computed families, keyed by catalog name.
/// Records are in the row order of the group's character table.
pub const SHIPPED: &[(&str, &str)] = &[("G24", include_str!("../../data/schur/G24.json"))];

/// Schur elements of subgroups of one ambient group, memoised by element set.
pub struct SchurRegistry<'a> {
    group: &'a ReflectionGroup,
    cache: Mutex<HashMap<Vec<usize>, Arc<Vec<RatFun>>>>,
}

impl<'a> SchurRegistry<'a> {
    pub fn new(group: &'a ReflectionGroup) -> Self {
        SchurRegistry { group, cache: Mutex::new(HashMap::new()) }
    }

    pub fn group(&self) -> &'a ReflectionGroup {
        self.group
    }

    /// Schur elements of every irreducible character of `sub`, in table order.
    pub fn schur(&self, sub: &SubgroupData) -> Result<Arc<Vec<RatFun>>, HeckeError> {
        if let Some(v) = self.cache.lock().expect("cache lock").get(&sub.elements) {
            return Ok(v.clone());
        }
        let v = match self.shipped_whole(sub)? {
            Some(v) => Arc::new(v),
            None => Arc::new(providers::schur_elements(self.group, sub)?),
        };
        validate_x1(sub, &v)?;
        self.cache.lock().expect("cache lock").insert(sub.elements.clone(), v.clone());
        Ok(v)
    }

    /// Shipped Schur data for a whole group that no provider covers, reordered to `sub`'s table.
    fn shipped_whole(&self, sub: &SubgroupData) -> Result<Option<Vec<RatFun>>, HeckeError> {
        if sub.order() != self.group.order() {
            return Ok(None);
        }
        let Some(src) = SHIPPED.iter().find(|(name, _)| *name == self.group.name()).map(|(_, s)| *s) else {
            return Ok(None);
        };
        let vals = SchurData::from_json(src)?.values()?;
        let table = self.group.char_table();
        if vals.len() != table.num_irr() {
            return Err(HeckeError::Validation(format!("{}: {} shipped Schur elements", self.group.name(), vals.len())));
        }
        sub.table
            .values
            .iter()
            .map(|row| {
                let i = table.find(row).ok_or_else(|| HeckeError::Validation("character not in the group table".into()))?;
                Ok(vals[i].clone())
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }

    /// 𝔣^{sub}_1 / 𝔣^{sub}_φ, the generic degree of φ.
    pub fn generic_degree(&self, sub: &SubgroupData, phi: usize) -> Result<LaurentX, HeckeError> {
        let s = self.schur(sub)?;
        let trivial = trivial_index(sub);
        block_degree(&s[trivial], &s[phi])
    }
}

/// Index of the trivial character in a (sub)group table.
pub fn trivial_index(sub: &SubgroupData) -> usize {
    sub.table.values.iter().position(|r| r.iter().all(|c| c.is_one())).expect("trivial character")
}

/// γ(1) = 𝔣^W_1 / 𝔣^{W(θ)}_μ, which must be a Laurent polynomial.
pub fn block_degree(top: &RatFun, bottom: &RatFun) -> Result<LaurentX, HeckeError> {
    let q = top * &bottom.inv()?;
    q.to_laurent().ok_or_else(|| HeckeError::Validation(format!("degree {q} is not a Laurent polynomial")))
}

fn validate_x1(sub: &SubgroupData, s: &[RatFun]) -> Result<(), HeckeError> {
    for (i, f) in s.iter().enumerate() {
        let want = CycloNum::from_ratio(sub.order() as i64, sub.table.degree(i));
        let got = f.at_one()?;
        if got != want {
            return Err(HeckeError::Validation(format!(
                "Schur element {f} of character {i} is {got} at x=1, expected {want}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::load_group;

    fn degrees_of(name: &str) -> Vec<String> {
        let g = load_group(name, None, 0).unwrap();
        let reg = SchurRegistry::new(&g);
        let w = g.whole().unwrap();
        (0..w.table.num_irr()).map(|i| reg.generic_degree(&w, i).unwrap().to_string()).collect()
    }

    #[test]
    fn a1_schur() {
        let g = load_group("A1", None, 0).unwrap();
        let reg = SchurRegistry::new(&g);
        let w = g.whole().unwrap();
        let s = reg.schur(&w).unwrap();
        assert_eq!(s[0], RatFun::from(LaurentX::from_ints(&[1, 1])));
        assert_eq!(s[1], RatFun::from(LaurentX::from_terms(1, [(0, CycloNum::one()), (-1, CycloNum::one())])));
        assert_eq!(degrees_of("A1"), vec!["1", "x"]);
    }

    #[test]
    fn mu3_trivial_schur() {
        let g = load_group("mu3", None, 0).unwrap();
        let reg = SchurRegistry::new(&g);
        let w = g.whole().unwrap();
        assert_eq!(reg.schur(&w).unwrap()[0], RatFun::from(LaurentX::from_ints(&[1, 1, 1])));
    }

    #[test]
    fn steinberg_degrees() {
        for (name, n) in [("A2", 3), ("G552", 5), ("G333", 9), ("G(4,4,3)", 12)] {
            let g = load_group(name, None, 0).unwrap();
            let reg = SchurRegistry::new(&g);
            let w = g.whole().unwrap();
            let sign: Vec<CycloNum> =
                (0..w.group.num_classes()).map(|c| crate::group::matrix::det(g.matrix(w.elements[w.group.class_rep(c)]))).collect();
            let st = w.table.find(&sign).unwrap();
            assert_eq!(reg.generic_degree(&w, st).unwrap(), LaurentX::x_pow(n), "{name}");
        }
    }

    #[test]
    fn spetsial_parameters() {
        let g = load_group("mu3", None, 0).unwrap();
        let sp = spetsial_specialisation(&g);
        assert_eq!(sp.classes.len(), 1);
        let p = sp.parameters(0);
        assert_eq!(p[0], LaurentX::x_pow(1));
        assert_eq!(p[1], LaurentX::constant(CycloNum::root_of_unity(3, 1)));
    }
}
