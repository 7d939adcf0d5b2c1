//! Finite-dimensional lattices of atoms, subspaces of them, and numerical tools for
//! stable phase retrieval: almost-disjointness constants, SPR ratios, explicit
//! constructions, tightening witnesses and perturbation bounds.

pub mod constructions;
pub mod error;
pub mod json;
pub mod metrics;
pub mod oracle;
pub mod perturbation;
pub mod scalar;
pub mod search;
pub mod space;
pub mod span;
pub mod witness;

pub use error::{Result, SprError};
pub use scalar::{Field, Scalar};
pub use search::Budget;
pub use space::{AtomSpace, LatticeVector, NormSpec, Subspace};
