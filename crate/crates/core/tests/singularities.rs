use covers_core::lattice_core::span_order;
use covers_core::local_singularities::{
    all_records, classify_nc, classify_smooth, mult_vanishing_order, table_fixture, witness_for,
    Branch, MultOrderQuery, TableKind, Witness,
};
use covers_core::GroupElt;
use proptest::prelude::*;

fn smooth_rows() -> Vec<&'static covers_core::local_singularities::SingularityRecord> {
    all_records().iter().filter(|r| r.kind == TableKind::Smooth).collect()
}

fn nc_rows() -> Vec<&'static covers_core::local_singularities::SingularityRecord> {
    all_records().iter().filter(|r| r.kind != TableKind::Smooth).collect()
}

/// Images of the basis vectors under a random map; kept only if invertible.
fn invertible(k: u8, cols: &[u8]) -> Option<Vec<u8>> {
    let cols: Vec<u8> = cols.iter().take(k as usize).map(|c| c % (1 << k)).collect();
    let elems: Vec<GroupElt> = cols.iter().map(|&c| GroupElt::new(k, c).unwrap()).collect();
    (span_order(&elems) == 1 << k).then_some(cols)
}

fn apply(cols: &[u8], g: GroupElt) -> GroupElt {
    let k = cols.len();
    let out = (0..k).filter(|i| g.bits() & (1 << (k - 1 - i)) != 0).fold(0u8, |acc, i| acc ^ cols[i]);
    GroupElt::new(k as u8, out).unwrap()
}

fn moved(cols: &[u8], bs: &[Branch]) -> Vec<Branch> {
    bs.iter().map(|b| Branch { label: apply(cols, b.label), component: b.component }).collect()
}

proptest! {
    #[test]
    fn smooth_classification_ignores_order_and_automorphisms(
        idx in 0usize..smooth_rows().len(),
        cols in prop::collection::vec(any::<u8>(), 4),
        seed in any::<u64>(),
    ) {
        let r = smooth_rows()[idx];
        let Witness::Smooth(mut cfg) = witness_for(r).unwrap() else { unreachable!() };
        let Some(m) = invertible(cfg.k, &cols) else { return Ok(()) };
        cfg.branches = moved(&m, &cfg.branches);
        // Deterministic shuffle from the seed.
        let n = cfg.branches.len();
        for i in (1..n).rev() {
            let j = (seed.rotate_left(i as u32) as usize) % (i + 1);
            cfg.branches.swap(i, j);
        }
        prop_assert_eq!(&classify_smooth(&cfg).unwrap().case_id, &r.case_id);
    }

    #[test]
    fn nc_classification_ignores_automorphisms_and_side_order(
        idx in 0usize..nc_rows().len(),
        cols in prop::collection::vec(any::<u8>(), 4),
        swap_within in any::<bool>(),
    ) {
        let r = nc_rows()[idx];
        let Witness::Nc(mut cfg) = witness_for(r).unwrap() else { unreachable!() };
        let Some(m) = invertible(cfg.k, &cols) else { return Ok(()) };
        cfg.double_curve_label = cfg.double_curve_label.map(|g| apply(&m, g));
        cfg.side1 = moved(&m, &cfg.side1);
        cfg.side2 = moved(&m, &cfg.side2);
        if swap_within {
            cfg.side1.reverse();
            cfg.side2.reverse();
        }
        prop_assert_eq!(&classify_nc(&cfg).unwrap().case_id, &r.case_id);
    }

    #[test]
    fn epsilon_symmetric_and_bounded(m in 1u32..=12, a0 in 0u32..24, a1 in 0u32..24, kind in 2u8..=3, b in 0u8..4) {
        let q = if kind == 2 {
            MultOrderQuery::case2(m, [a0 % (2 * m), a1 % (2 * m)])
        } else {
            let fix = |a: u32, beta: u8| if beta == 0 { (a % m, 0) } else { (a % m + 1, 1) };
            let (x0, y0) = fix(a0, b & 1);
            let (x1, y1) = fix(a1, b >> 1);
            MultOrderQuery::case3(m, [x0, x1], [y0, y1])
        };
        let e = mult_vanishing_order(&q).unwrap();
        prop_assert!(e <= 3);
        prop_assert_eq!(e, mult_vanishing_order(&q.swapped()).unwrap());
    }

    #[test]
    fn epsilon_case2_monotone(m in 1u32..=12, a in (0u32..24, 0u32..24), b in (0u32..24, 0u32..24)) {
        let q = |(x, y): (u32, u32)| MultOrderQuery::case2(m, [x % (2 * m), y % (2 * m)]);
        let (qa, qb) = (q(a), q(b));
        let (sa, sb) = (qa.alpha[0] + qa.alpha[1], qb.alpha[0] + qb.alpha[1]);
        if sa <= sb {
            prop_assert!(mult_vanishing_order(&qa).unwrap() <= mult_vanishing_order(&qb).unwrap());
        }
    }
}

#[test]
fn trivial_restrictions_give_zero() {
    for m in 1..=6 {
        assert_eq!(mult_vanishing_order(&MultOrderQuery::case2(m, [0, 0])).unwrap(), 0);
        assert_eq!(mult_vanishing_order(&MultOrderQuery::case3(m, [0, 0], [0, 0])).unwrap(), 0);
    }
    assert_eq!(mult_vanishing_order(&MultOrderQuery::case1([true, true])).unwrap(), 0);
}

#[test]
fn group_order_is_span_of_witness_labels() {
    for r in all_records() {
        let labels: Vec<GroupElt> = match witness_for(r).unwrap() {
            Witness::Smooth(c) => c.branches.iter().map(|b| b.label).collect(),
            Witness::Nc(c) => c
                .double_curve_label
                .into_iter()
                .chain(c.side1.iter().chain(&c.side2).map(|b| b.label))
                .collect(),
        };
        assert_eq!(span_order(&labels) as u32, r.h_order, "{}", r.case_id);
        let rank = r.relations.dependency_masks().len() as u32;
        assert_eq!(1u32 << (labels.len() as u32 - rank), r.h_order, "{}", r.case_id);
    }
}

#[test]
fn gorenstein_flags_follow_the_quotient_rule() {
    for r in all_records() {
        let tag = &r.singularity_tag;
        if tag.contains("/Z2") {
            assert_eq!(r.gorenstein, Some(false), "{}", r.case_id);
        } else if tag.starts_with("deg.cusp") {
            assert_eq!(r.gorenstein, Some(true), "{}", r.case_id);
        }
    }
}

#[test]
fn normalizations_point_to_smaller_groups() {
    for r in all_records().iter().filter(|r| r.table != 1) {
        for (id, _) in &r.normalization_refs {
            let n = table_fixture(id).unwrap();
            assert_eq!(r.h_order % n.h_order, 0, "{} -> {}", r.case_id, id);
        }
    }
}
