use covers_core::arrangements_strata::configs::all_configs;
use covers_core::arrangements_strata::{
    arrangement_lc_scan, scan_campedelli, ArrangementLine, LineArrangement, PVec,
    CAMPEDELLI_GENERIC,
};
use covers_core::polytopes::cells::normalize_cell;
use covers_core::polytopes::{CanonicalHalfspace, Perm};
use covers_core::GroupElt;
use proptest::prelude::*;
use std::collections::BTreeMap;

fn cell_of(label: &[CanonicalHalfspace]) -> Option<Vec<CanonicalHalfspace>> {
    let hs: Vec<_> = label.iter().map(|h| h.to_halfspace()).collect();
    normalize_cell(&hs).unwrap().map(|c| c.extra)
}

fn rename(arr: &LineArrangement, lines: impl Fn(&str) -> String, points: impl Fn(&str) -> String) -> LineArrangement {
    let mut out = arr.clone();
    for l in &mut out.lines {
        l.label = lines(&l.label);
    }
    out.points = arr
        .points
        .as_ref()
        .map(|m| m.iter().map(|(k, v)| (points(k), v.clone())).collect::<BTreeMap<_, _>>());
    out
}

fn swap_a12(s: &str) -> String {
    match s {
        "A1" => "A2".into(),
        "A2" => "A1".into(),
        o => o.into(),
    }
}

/// A→B→C→A on line names and P_A→P_B→P_C→P_A on centers.
fn cycle(s: &str) -> String {
    let next = |c: char| match c {
        'A' => 'B',
        'B' => 'C',
        'C' => 'A',
        o => o,
    };
    s.chars().map(next).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scan_is_equivariant(idx in 0usize..all_configs().len(), seed in any::<u64>(), which in 0u8..2) {
        let arr = all_configs()[idx].realize(seed);
        let (moved, perm) = if which == 0 {
            (rename(&arr, swap_a12, |p| p.to_string()), Perm::swap(1, 2))
        } else {
            (rename(&arr, cycle, cycle), Perm(std::array::from_fn(|i| ((i + 4) % 12) as u8)))
        };
        let s0 = arrangement_lc_scan(&arr).unwrap();
        let s1 = arrangement_lc_scan(&moved).unwrap();
        prop_assert_eq!(s0.lc, s1.lc);
        let image: Vec<CanonicalHalfspace> = s0.label.violated.iter().map(|h| h.apply(&perm)).collect();
        prop_assert_eq!(cell_of(&image), cell_of(&s1.label.violated));
    }

    #[test]
    fn campedelli_concurrency_classified_by_labels(i in 0usize..7, j in 0usize..7, l in 0usize..7, t in 100i64..1000) {
        prop_assume!(i != j && j != l && i != l);
        let mut arr = LineArrangement::from_json(CAMPEDELLI_GENERIC).unwrap();
        let line = |a: &ArrangementLine| covers_core::arrangements_strata::pvec(&a.coeffs);
        let p = line(&arr.lines[i]).cross(&line(&arr.lines[j]));
        let other = PVec::from_ints(1, t, t * t * t + 7);
        arr.lines[l].coeffs = p.cross(&other).to_vec();
        let b = scan_campedelli(&arr).unwrap();
        let labels: Vec<GroupElt> = [i, j, l].iter().map(|&x| arr.lines[x].label.parse().unwrap()).collect();
        let zero_sum = labels[0] + labels[1] + labels[2] == GroupElt::zero(3);
        let pt = b.points.iter().find(|q| [i, j, l].iter().all(|x| q.lines.contains(x))).unwrap();
        if pt.lines.len() == 3 {
            prop_assert_eq!(pt.singularity.as_str(), if zero_sum { "1/4(1,1)" } else { "A1" });
        }
    }
}

#[test]
fn generic_campedelli_has_no_special_points() {
    let arr = LineArrangement::from_json(CAMPEDELLI_GENERIC).unwrap();
    let b = scan_campedelli(&arr).unwrap();
    assert!(b.points.is_empty());
    assert_eq!(b.codimension, 0);
}

#[test]
fn broken_incidence_is_rejected() {
    let mut arr = LineArrangement::from_json(covers_core::arrangements_strata::BURNIAT_GENERIC).unwrap();
    arr.lines.retain(|l| l.label != "B2");
    assert!(arrangement_lc_scan(&arr).is_err());
    let mut arr = LineArrangement::from_json(covers_core::arrangements_strata::BURNIAT_GENERIC).unwrap();
    let a1 = arr.lines.iter_mut().find(|l| l.label == "A1").unwrap();
    a1.coeffs = PVec::from_ints(1, 1, 1).to_vec();
    let err = arrangement_lc_scan(&arr).unwrap_err().to_string();
    assert!(err.contains("A1 must pass through PB"), "{err}");
    let bad = r#"{"kind":"burniat","lines":[{"label":"A0","coeffs":["0","0","0"]}]}"#;
    assert!(LineArrangement::from_json(bad).is_err());
}

#[test]
fn every_triple_is_independent_or_zero_sum() {
    let labels: Vec<GroupElt> = GroupElt::all(3).into_iter().filter(|g| !g.is_zero()).collect();
    for a in 0..7 {
        for b in a + 1..7 {
            for c in b + 1..7 {
                let t = [labels[a], labels[b], labels[c]];
                let independent = covers_core::lattice_core::span_order(&t) == 8;
                let zero = t[0] + t[1] + t[2] == GroupElt::zero(3);
                assert!(independent ^ zero);
            }
        }
    }
}
