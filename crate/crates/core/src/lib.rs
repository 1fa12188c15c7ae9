//! Exact algebra behind degeneracy loci of holomorphic curves: polynomial
//! arithmetic over ℚ and ℚ(t), unimodular lattice changes, effective
//! Nullstellensatz certificates, specialization sets, exceptional loci and
//! degeneracy polynomials.

pub mod algebra;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod nullstellensatz;
pub mod specialization;
pub mod derivation;
pub mod expsum;
pub mod exceptional;
pub mod degeneracy;

pub use error::{Error, Result};
