//! Numerical geometry of Horikawa surfaces: Picard lattices and line-bundle
//! cohomology of `P²` and `F_d`, double-cover invariants, the classification
//! of branch data, characteristic-2 vector-field quotients and their
//! deformation and lifting checks.

pub mod charts;
pub mod classify;
pub mod cohomology;
pub mod cover;
pub mod error;
pub mod family;
pub mod foliation;
pub mod lattice;
pub mod selftest;

pub use error::{HorikawaError, Result};
