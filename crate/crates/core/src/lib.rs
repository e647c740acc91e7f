//! Exact computations with finite-dimensional algebras presented by quivers
//! with relations: rewriting, structure constants, modules and homology,
//! mirror-reflective extensions, stratifications and towers.
#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod field;
pub mod linalg;
pub mod error;
pub mod quiver;
pub mod format;
pub mod algebra;
pub mod rewrite;
pub mod poly;
pub mod sample;
pub mod verdict;
pub mod invariants;
pub mod module;
pub mod homology;
pub mod mirror;
pub mod mirror_quiver;
pub mod strat;
pub mod tower;
