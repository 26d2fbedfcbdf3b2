//! Exact computations with ℤ_ℓ-spetses: partial character tables of
//! principal blocks in the coprime case, unipotent and almost character
//! values on ℓ-elements, and checks of the accompanying conjectures.

// Matrix code reads better with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod blocktable;
pub mod cli;
pub mod group;
pub mod hecke;
pub mod torus;
pub mod report;
pub mod unipotent;
