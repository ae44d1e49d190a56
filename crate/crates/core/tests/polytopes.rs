use covers_core::arrangements_strata::strata::all_cell_metadata;
use covers_core::polytopes::burniat::delta_bur;
use covers_core::polytopes::{canonical, parse_inequality, symmetry_group, Canonical, SymmetryGroup};
use proptest::prelude::*;
use std::sync::OnceLock;

fn group() -> &'static SymmetryGroup {
    static G: OnceLock<SymmetryGroup> = OnceLock::new();
    G.get_or_init(|| symmetry_group().unwrap())
}

fn printed_inequalities() -> Vec<String> {
    all_cell_metadata().into_iter().flat_map(|m| m.inequalities).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dimension_is_symmetry_invariant(
        picks in prop::collection::vec(0usize..printed_inequalities().len(), 1..=3),
        flip in prop::collection::vec(any::<bool>(), 3),
        g in 0usize..48,
    ) {
        let all = printed_inequalities();
        let mut hs = Vec::new();
        for (n, &i) in picks.iter().enumerate() {
            let Canonical::Proper(c) = canonical(&parse_inequality(&all[i]).unwrap()).unwrap() else { continue };
            hs.push(if flip[n] { c.flip() } else { c });
        }
        let p = &group().elements[g];
        let d0 = delta_bur().with(hs.iter().map(|h| h.to_halfspace())).dimension();
        let d1 = delta_bur().with(hs.iter().map(|h| h.apply(p).to_halfspace())).dimension();
        prop_assert_eq!(d0, d1);
    }
}

#[test]
fn delta_is_eight_dimensional() {
    assert_eq!(delta_bur().dimension(), 8);
    assert_eq!(group().elements.len(), 48);
}
