//! Minimal free resolutions of toric ideals through simplicial homology of
//! semigroup fibers.

pub mod complexes;
pub mod error;
pub mod field;
pub mod homology;
pub mod json;
pub mod monomial;
pub mod resolution;
pub mod semigroup;

pub use error::{Error, Result};
pub use field::{Field, FieldKind, PrimeField, Rationals};
pub use monomial::{Monomial, TermOrder};
pub use semigroup::{GeneratorMatrix, PositiveGrading, SDegree, Semigroup};
