//! The eight boundary divisors of the Burniat moduli, up to symmetry, each
//! with a rational witness arrangement.
//!
//! Items 1 to 5 are the serious degenerations: the arrangement on Σ is not
//! lc and its label picks out a maximal cell. Items 6 to 8 keep Y = Σ; the
//! local models at their special points are classified from the branch
//! labels A ↦ 10, B ↦ 01, C ↦ 11.

use super::strata::row_of_label;
use super::{arrangement_lc_scan, LineArrangement};
use crate::error::Result;
use crate::lattice_core::GroupElt;
use crate::local_singularities::{classify_smooth, Branch, LocalBranchConfig};
use serde::Serialize;
use std::collections::BTreeSet;

const FIXTURES: [&str; 8] = [
    include_str!("../../fixtures/arrangements/burniat_item1.json"),
    include_str!("../../fixtures/arrangements/burniat_item2.json"),
    include_str!("../../fixtures/arrangements/burniat_item3.json"),
    include_str!("../../fixtures/arrangements/burniat_item4.json"),
    include_str!("../../fixtures/arrangements/burniat_item5.json"),
    include_str!("../../fixtures/arrangements/burniat_item6.json"),
    include_str!("../../fixtures/arrangements/burniat_item7.json"),
    include_str!("../../fixtures/arrangements/burniat_item8.json"),
];

pub const BURNIAT_GENERIC: &str = include_str!("../../fixtures/arrangements/burniat_generic.json");
pub const CAMPEDELLI_GENERIC: &str = include_str!("../../fixtures/arrangements/campedelli_generic.json");

const DESCRIPTIONS: [&str; 8] = [
    "A1=A2=A0: three P1xP1 glued in a cube corner",
    "A1=A0, B2=A0, C2=B0: the second cube degeneration",
    "A1=B2=A0: two halves, F1 and F1",
    "A1=A2, B1=B2, C1 through A1∩B1: five lines through a point",
    "A1=A2, B1=B2, C1=C2 through A1∩B1: six lines through a point",
    "A1=A2 with Y = Σ",
    "A1 degenerates to A0+C3 with Y = Σ",
    "A1, B1, C1 concurrent with Y = Σ",
];

/// Row ids of the cell each serious item lands in.
const ROW_IDS: [&str; 5] = ["1", "2", "3", "5", "7"];

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundaryItem {
    pub index: u8,
    pub description: String,
    /// Expected lc-ness of the witness on Σ.
    pub lc: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_id: Option<String>,
    /// Local cases at the special points, for the items with Y = Σ.
    pub cases: Vec<String>,
    pub arrangement: LineArrangement,
}

/// What the lc scan says about an item's witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ItemCheck {
    pub lc: bool,
    pub label: Vec<String>,
    pub row: Option<String>,
}

fn smooth_case(branches: &[(&str, u32)]) -> Result<String> {
    let cfg = LocalBranchConfig {
        k: 2,
        branches: branches
            .iter()
            .map(|&(l, component)| Ok(Branch { label: l.parse::<GroupElt>()?, component }))
            .collect::<Result<_>>()?,
    };
    Ok(classify_smooth(&cfg)?.case_id.clone())
}

/// Branch data at the special points of items 6 to 8, as (label,
/// component) lists.
fn special_points(item: u8) -> Vec<Vec<(&'static str, u32)>> {
    match item {
        // Doubled A1=A2, and where it crosses a B or C curve.
        6 => vec![
            vec![("10", 0), ("10", 0)],
            vec![("10", 0), ("10", 0), ("01", 1)],
            vec![("10", 0), ("10", 0), ("11", 1)],
        ],
        // A0 doubled by A1; C3 doubled by A1; their crossing; the other
        // curves meeting each.
        7 => vec![
            vec![("10", 0), ("10", 0)],
            vec![("10", 0), ("11", 0)],
            vec![("10", 0), ("10", 0), ("10", 1), ("11", 1)],
            vec![("10", 0), ("10", 0), ("01", 1)],
            vec![("10", 0), ("10", 0), ("11", 1)],
            vec![("10", 0), ("11", 0), ("01", 1)],
        ],
        // Three curves of different pencils through one point.
        8 => vec![vec![("10", 0), ("01", 1), ("11", 2)]],
        _ => Vec::new(),
    }
}

fn item_cases(item: u8) -> Result<Vec<String>> {
    let set: BTreeSet<String> = special_points(item).iter().map(|p| smooth_case(p)).collect::<Result<_>>()?;
    Ok(set.into_iter().collect())
}

pub fn burniat_boundary_catalog() -> Result<Vec<BoundaryItem>> {
    (1..=8u8)
        .map(|i| {
            let k = (i - 1) as usize;
            Ok(BoundaryItem {
                index: i,
                description: DESCRIPTIONS[k].to_string(),
                lc: i > 5,
                orbit_id: ROW_IDS.get(k).map(|s| s.to_string()),
                cases: item_cases(i)?,
                arrangement: LineArrangement::from_json(FIXTURES[k])?,
            })
        })
        .collect()
}

pub fn check_item(item: &BoundaryItem) -> Result<ItemCheck> {
    let scan = arrangement_lc_scan(&item.arrangement)?;
    let row = if scan.lc { None } else { row_of_label(&scan.label)? };
    Ok(ItemCheck { lc: scan.lc, label: scan.label.pretty(), row })
}

/// Along a double curve C of Y, the two self-intersections of C in the
/// components it joins and the triple points of Y on C sum to zero.
pub fn triple_point_check(self_int_a: i64, self_int_b: i64, triple_points: u64) -> bool {
    self_int_a + self_int_b + triple_points as i64 == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_matches_scans() {
        for item in burniat_boundary_catalog().unwrap() {
            let c = check_item(&item).unwrap();
            assert_eq!(c.lc, item.lc, "item {}", item.index);
            assert_eq!(c.row, item.orbit_id, "item {}", item.index);
        }
    }

    #[test]
    fn cases_of_the_sigma_items() {
        let cat = burniat_boundary_catalog().unwrap();
        assert_eq!(cat[5].cases, vec!["2′.2", "3′.3"]);
        assert_eq!(cat[6].cases, vec!["2′.1", "2′.2", "3′.2", "3′.3", "4″.10"]);
        assert_eq!(cat[7].cases, vec!["3.2"]);
        assert!(cat[..5].iter().all(|i| i.cases.is_empty()));
    }

    #[test]
    fn triple_points() {
        assert!(triple_point_check(0, 0, 0));
        assert!(triple_point_check(-1, -1, 2));
        assert!(!triple_point_check(0, -1, 0));
    }
}
