//! Finite complex reflection groups realised over cyclotomic fields.

pub mod catalog;
pub mod chartab;
pub mod finite;
pub mod matrix;
pub mod reflection;
pub mod subgroup;

pub use chartab::{character_table, CharTable};
pub use catalog::{builtin, default_catalog, load_group, Catalog, CatalogEntry};
pub use finite::FiniteGroup;
pub use reflection::{Family, ReflectionGroup};
pub use subgroup::SubgroupData;

use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("character table splitting failed for a group of order {order} after {attempts} attempts")]
    SplitFailure { order: usize, attempts: usize },
    #[error("group generated by the given matrices exceeds {limit} elements")]
    TooLarge { limit: usize },
    #[error("unknown group '{0}'")]
    UnknownGroup(String),
    #[error("invalid group data: {0}")]
    Invalid(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
