//! Exact-arithmetic workbench for finite-dimensional Lie algebras given by
//! structure constants: validation, structural invariants, Chevalley
//! cohomology, contractions, formal deformations, rigidity tests, and
//! geometric structures, all over the rationals or Gaussian rationals.

pub mod catalog;
pub mod cohomology;
pub mod combo;
pub mod contractions;
pub mod deformations;
pub mod geometry;
pub mod homogeneous;
pub mod invariants;
pub mod core;
pub mod linalg;
pub mod rigidity;
pub mod scalar;
