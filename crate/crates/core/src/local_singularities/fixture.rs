use crate::error::{Error, Result};
use crate::lattice_core::RelationSet;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::OnceLock;

const TABLES_JSON: &str = include_str!("../../fixtures/tables.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TableKind {
    /// Smooth base.
    #[serde(rename = "smooth")]
    Smooth,
    /// Normal-crossing base, double curve not in the branch locus.
    E,
    /// Normal-crossing base, double curve in the branch locus.
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Semiresolution {
    #[serde(rename = "nc")]
    Nc,
    #[serde(rename = "pinch")]
    Pinch,
    #[serde(rename = "n/a")]
    NotApplicable,
}

/// `D_X^ν → D_X → C` in a compact syntax: `D` is a smooth germ, `Gk` the
/// seminormal union of k germs, `+` a disjoint union, and a leading integer
/// a multiplicity. `annotatedMap` says which arrow (1 or 2) carries the
/// per-component degrees; unannotated maps have degree 1 everywhere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DoubleLocusSignature {
    pub printed: String,
    pub upstairs: String,
    pub middle: Option<String>,
    pub base: Option<String>,
    pub annotated_map: Option<u8>,
    pub degree_vector: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SingularityRecord {
    pub case_id: String,
    pub table: u8,
    pub kind: TableKind,
    /// Number of doubled components: 0 plain, 1 primed, 2 double-primed.
    pub doubles: u8,
    /// Components through the point (per side for a normal-crossing base).
    pub components: u8,
    pub h_order: u32,
    pub relations: RelationSet,
    pub singularity_tag: String,
    pub normalization_refs: Vec<(String, u32)>,
    pub double_locus: Option<DoubleLocusSignature>,
    pub semiresolution: Semiresolution,
    pub gorenstein: Option<bool>,
    pub occurrence: Vec<String>,
    pub source_ambiguous: bool,
    pub source_notes: Vec<String>,
}

impl SingularityRecord {
    /// Number of labels: branches, plus g₀ in the ramified family.
    pub fn label_count(&self) -> usize {
        let c = self.components as usize;
        match self.kind {
            TableKind::Smooth => c,
            TableKind::E => 2 * c,
            TableKind::R => 2 * c + 1,
        }
    }

    /// Position of the first label in the printed relations.
    pub fn base_index(&self) -> usize {
        if self.kind == TableKind::R {
            0
        } else {
            1
        }
    }
}

fn records() -> &'static (Vec<SingularityRecord>, BTreeMap<String, usize>) {
    static R: OnceLock<(Vec<SingularityRecord>, BTreeMap<String, usize>)> = OnceLock::new();
    R.get_or_init(|| {
        let rows: Vec<SingularityRecord> =
            serde_json::from_str(TABLES_JSON).expect("bundled table fixture parses");
        let index = rows.iter().enumerate().map(|(i, r)| (r.case_id.clone(), i)).collect();
        (rows, index)
    })
}

pub fn all_records() -> &'static [SingularityRecord] {
    &records().0
}

/// Accepts ASCII primes (`4'.9`, `4''.9`) as well as ′ and ″.
pub fn normalize_case_id(id: &str) -> String {
    id.trim().replace("''", "″").replace('\'', "′")
}

pub fn table_fixture(case_id: &str) -> Result<&'static SingularityRecord> {
    let (rows, index) = records();
    index
        .get(&normalize_case_id(case_id))
        .map(|&i| &rows[i])
        .ok_or_else(|| Error::UnknownCase(case_id.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_counts_per_table() {
        let mut counts = [0usize; 10];
        for r in all_records() {
            counts[r.table as usize] += 1;
        }
        assert_eq!(&counts[1..], &[16, 21, 11, 5, 3, 3, 14, 14, 10]);
        assert_eq!(records().1.len(), 97, "case ids are unique");
    }

    #[test]
    fn lookups() {
        let r = table_fixture("4.2").unwrap();
        assert_eq!(r.singularity_tag, "elliptic, F^2=-8");
        assert_eq!(r.occurrence, vec!["C"]);
        let r = table_fixture("4'.9").unwrap();
        assert_eq!(r.singularity_tag, "(4′.6)/Z2");
        assert_eq!(r.semiresolution, Semiresolution::Pinch);
        assert_eq!(r.occurrence, vec!["B"]);
        let r = table_fixture("E2′.1").unwrap();
        assert_eq!(r.singularity_tag, "deg.cusp(6)");
        assert_eq!(r.normalization_refs, vec![("0.1".to_string(), 4), ("2.2".to_string(), 2)]);
        assert!(matches!(table_fixture("9.9"), Err(Error::UnknownCase(_))));
    }

    #[test]
    fn malformed_row_is_flagged() {
        let r = table_fixture("4′.11").unwrap();
        assert!(r.source_ambiguous);
        assert_eq!(r.double_locus.as_ref().unwrap().degree_vector, vec![2]);
    }
}
