//! Polynomial algebra over `GF(2^k)` and `Q` for surface computations:
//! dense univariate and sparse bivariate polynomials, gcds and square parts,
//! resultants, root finding, local intersection multiplicities and common
//! zeros of bivariate systems.

pub mod bivariate;
pub mod error;
pub mod field;
pub mod gcd;
pub mod multiplicity;
pub mod parse;
pub mod points;
pub mod ratfn;
pub mod resultant;
pub mod roots;
pub mod univariate;

pub use bivariate::{Exponent, MonomialMap, Poly2, Vars};
pub use error::PolyError;
pub use field::{Embedding, Field, FieldSpec, Gf2k, Rationals, MAX_EXTENSION_DEGREE};
pub use gcd::{gcd, square_part};
pub use multiplicity::{local_multiplicity, TruncationBound};
pub use parse::parse_poly;
pub use points::{rational_points_of_system, SystemPoint};
pub use ratfn::RatFn;
pub use resultant::{resultant_var0, resultant_var1};
pub use univariate::UniPoly;
