//! Exact arithmetic foundations: rationals, vectors over the two-element
//! field, and Picard lattices of the rational base surfaces.

mod gf2;
mod picard;
mod rational;

pub use gf2::{
    relations_canonical, relations_canonical_from, span_f2, span_order, Character, GroupElt,
    RelationSet,
};
pub(crate) use gf2::reduced_basis;
pub use picard::{
    cremona_map, intersect_classes, riemann_roch_chi, sigma_label_class, BaseSurface,
    DivisorClass, SurfaceKind,
};
pub use rational::{q, Rational};
