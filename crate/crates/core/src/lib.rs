//! Finite p-group computations: constructions from quaternion and matrix
//! models, filtration and structural predicates, and exhaustive search for
//! intense automorphisms.

pub mod analysis;
pub mod constructions;
pub mod error;
pub mod exec;
pub mod group;
pub mod intensity;
pub mod kappa;
pub mod ring;

pub use error::{Error, Result};
pub use exec::ExecMode;
