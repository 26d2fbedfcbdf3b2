//! Subgroups of a reflection group: local character tables, class fusion,
//! parabolic stabilisers and induction multiplicities.

use std::sync::Arc;

use super::chartab::{character_table, inner, CharTable};
use super::finite::FiniteGroup;
use super::matrix::{self, Vector};
use super::reflection::ReflectionGroup;
use super::GroupError;
use crate::arith::CycloNum;

/// A subgroup given by its sorted global element list (identity first).
#[derive(Debug)]
pub struct SubgroupData {
    pub elements: Vec<usize>,
    pub group: FiniteGroup,
    pub table: CharTable,
    /// Ambient class of each local class.
    pub fusion: Vec<usize>,
}

impl SubgroupData {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Local index of a global element.
    pub fn local(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    /// Local class of a global element.
    pub fn class_of_global(&self, g: usize) -> Option<usize> {
        self.local(g).map(|i| self.group.class_of(i))
    }

    pub fn contains(&self, g: usize) -> bool {
        self.local(g).is_some()
    }

    /// Values of an ambient class function on the local classes.
    pub fn restrict(&self, f: &[CycloNum]) -> Vec<CycloNum> {
        self.fusion.iter().map(|&c| f[c].clone()).collect()
    }

    /// Value of the local class function `f` at a global element.
    pub fn value_at(&self, f: &[CycloNum], g: usize) -> CycloNum {
        f[self.class_of_global(g).expect("element lies in the subgroup")].clone()
    }

    pub fn inner(&self, a: &[CycloNum], b: &[CycloNum]) -> CycloNum {
        inner(&self.group, a, b)
    }

    /// Decomposition of a local class function into local irreducibles.
    pub fn decompose(&self, f: &[CycloNum]) -> Vec<CycloNum> {
        self.table.values.iter().map(|chi| self.inner(f, chi)).collect()
    }
}

impl ReflectionGroup {
    /// Cached subgroup data for a closed element set.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Arc<SubgroupData>, GroupError> {
        let mut key = elements.to_vec();
        key.sort_unstable();
        key.dedup();
        if let Some(s) = self.subgroup_cache().lock().expect("cache lock").get(&key) {
            return Ok(s.clone());
        }
        if key.first() != Some(&0) {
            return Err(GroupError::Invalid("subgroup must contain the identity".into()));
        }
        for &a in &key {
            for &b in &key {
                if key.binary_search(&self.mul(a, b)).is_err() {
                    return Err(GroupError::Invalid("element set is not closed under products".into()));
                }
            }
        }
        let (group, _) = self.abstract_group().subgroup(&key);
        let table = character_table(&group, self.seed())?;
        let fusion = (0..group.num_classes()).map(|c| self.class_of(key[group.class_rep(c)])).collect();
        let data = Arc::new(SubgroupData { elements: key.clone(), group, table, fusion });
        self.subgroup_cache().lock().expect("cache lock").insert(key, data.clone());
        Ok(data)
    }

    /// Closure of the given elements.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        self.abstract_group().generate(gens)
    }

    pub fn whole(&self) -> Result<Arc<SubgroupData>, GroupError> {
        self.subgroup(&(0..self.order()).collect::<Vec<_>>())
    }

    /// Pointwise stabiliser of vectors over the defining field.
    pub fn parabolic(&self, fixed: &[Vector]) -> Vec<usize> {
        (0..self.order())
            .filter(|&g| fixed.iter().all(|v| matrix::apply(self.matrix(g), v) == *v))
            .collect()
    }

    /// Fixed space of a set of elements, as a basis.
    pub fn fixed_space(&self, elems: &[usize]) -> Vec<Vector> {
        let mut rows = Vec::new();
        for &g in elems {
            rows.extend(matrix::sub_identity(self.matrix(g)));
        }
        if rows.is_empty() {
            return (0..self.rank())
                .map(|i| (0..self.rank()).map(|j| if i == j { CycloNum::one() } else { CycloNum::zero() }).collect())
                .collect();
        }
        matrix::kernel(&rows)
    }

    /// Whether `elems` equals the pointwise stabiliser of its own fixed space.
    pub fn is_parabolic(&self, elems: &[usize]) -> bool {
        let mut h = elems.to_vec();
        h.sort_unstable();
        self.parabolic(&self.fixed_space(&h)) == h
    }

    /// Elements commuting with g.
    pub fn centraliser(&self, g: usize) -> Vec<usize> {
        self.abstract_group().centraliser(g)
    }

    /// Reflections lying in a subgroup.
    pub fn reflections_in(&self, elems: &[usize]) -> Vec<usize> {
        self.reflections().iter().copied().filter(|r| elems.binary_search(r).is_ok()).collect()
    }

    /// ⟨Res φ, λ⟩ for φ on `big` and λ on `small` ⊆ `big`.
    pub fn induction_multiplicity(
        &self,
        big: &SubgroupData,
        phi: &[CycloNum],
        small: &SubgroupData,
        lambda: &[CycloNum],
    ) -> CycloNum {
        small.inner(&restrict_between(big, phi, small), lambda)
    }
}

/// Restrict a class function of `big` to its subgroup `small`.
pub fn restrict_between(big: &SubgroupData, f: &[CycloNum], small: &SubgroupData) -> Vec<CycloNum> {
    (0..small.group.num_classes())
        .map(|c| big.value_at(f, small.elements[small.group.class_rep(c)]))
        .collect()
}
