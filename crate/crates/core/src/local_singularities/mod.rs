//! Local singularities of Z₂ᵏ covers over a point of the base, read off
//! from the branch labels through that point.
//!
//! The nine classification tables ship as one JSON fixture. A configuration
//! is reduced to a signature (table family, coincidence pattern, number of
//! components, canonical relation set up to the allowed symmetries) and
//! looked up there.

mod classify;
mod epsilon;
mod fixture;
mod gluing;

pub use classify::{
    classify_nc, classify_smooth, nc_witness, parse_branches, signature_index, signature_nc,
    signature_of_record, signature_smooth, smooth_witness, witness_for, witness_labels, Branch,
    LocalBranchConfig, NCLocalConfig, Signature, Witness,
};
pub use epsilon::{case1_specialization, mult_vanishing_order, MultOrderQuery};
pub use fixture::{
    all_records, normalize_case_id, table_fixture, DoubleLocusSignature, Semiresolution,
    SingularityRecord, TableKind,
};
pub use gluing::{gluing_compatible, CurveCoverData};
