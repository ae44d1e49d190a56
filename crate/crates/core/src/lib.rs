//! Exact combinatorial machinery for Z₂ᵏ covers of rational surfaces, the
//! slc singularity tables of such covers, and the Burniat polytope together
//! with its matroid cells and tilings.
//!
//! Everything is exact: rationals are reduced fractions, linear programs are
//! solved by a rational simplex, and no floating point is used anywhere.

pub mod abelian_covers;
pub mod arrangements_strata;
pub mod error;
pub mod lattice_core;
pub mod local_singularities;
pub mod polytopes;

pub use error::{Error, Result};
pub use lattice_core::{
    BaseSurface, Character, DivisorClass, GroupElt, Rational, RelationSet, SurfaceKind,
};
