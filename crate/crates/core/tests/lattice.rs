use covers_core::lattice_core::{
    cremona_map, intersect_classes, relations_canonical, riemann_roch_chi, span_f2,
    BaseSurface, GroupElt, Rational, SurfaceKind,
};
use proptest::prelude::*;

const KINDS: [SurfaceKind; 5] =
    [SurfaceKind::P2, SurfaceKind::Sigma, SurfaceKind::P1xP1, SurfaceKind::F1, SurfaceKind::Bl4P2];

fn labels(k: u8, max: usize) -> impl Strategy<Value = Vec<GroupElt>> {
    prop::collection::vec(0u8..(1 << k), 1..=max)
        .prop_map(move |v| v.into_iter().map(|b| GroupElt::new(k, b).unwrap()).collect())
}

fn sigma_class() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 4)
}

proptest! {
    #[test]
    fn span_is_a_subgroup_containing_inputs(elems in (1u8..=5).prop_flat_map(|k| labels(k, 6))) {
        let span = span_f2(&elems).unwrap();
        prop_assert!(span.len().is_power_of_two());
        for g in &elems {
            prop_assert!(span.contains(g));
        }
        for a in &span {
            for b in &span {
                prop_assert!(span.contains(&(*a + *b)));
            }
        }
    }

    #[test]
    fn relation_dimension_survives_permutation(elems in labels(4, 6), rot in 0usize..6) {
        let mut moved = elems.clone();
        let r = rot % moved.len();
        moved.rotate_left(r);
        let a = relations_canonical(&elems);
        let b = relations_canonical(&moved);
        prop_assert_eq!(a.dependency_masks().len(), b.dependency_masks().len());
    }

    #[test]
    fn cremona_is_an_isometric_involution(a in sigma_class(), b in sigma_class()) {
        let s = BaseSurface::preset(SurfaceKind::Sigma);
        let ca = cremona_map(&a).unwrap();
        let cb = cremona_map(&b).unwrap();
        prop_assert_eq!(cremona_map(&ca).unwrap(), a.clone());
        prop_assert_eq!(
            intersect_classes(&ca, &cb, &s).unwrap(),
            intersect_classes(&a, &b, &s).unwrap()
        );
    }
}

#[test]
fn riemann_roch_of_zero_is_one() {
    for k in KINDS {
        let s = BaseSurface::preset(k);
        let zero = vec![0i64; s.pic_rank];
        assert_eq!(riemann_roch_chi(&zero, &s).unwrap(), Rational::one(), "{k}");
    }
}

#[test]
fn canonical_squares_of_presets() {
    // K² = 10 − ρ on a rational surface.
    for k in KINDS {
        let s = BaseSurface::preset(k);
        let kk = intersect_classes(&s.canonical_class, &s.canonical_class, &s).unwrap();
        assert_eq!(kk, 10 - s.pic_rank as i64, "{k}");
    }
}
