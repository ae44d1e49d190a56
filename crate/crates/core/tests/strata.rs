//! Cell orbits, tilings and their bookkeeping. The enumerations are cached
//! per process, so these share one run.

use covers_core::arrangements_strata::strata::{
    burniat_tilings, group, maximal_cell_orbits, sigma_degree_from_lattice,
};
use covers_core::arrangements_strata::{cell_metadata, surface_census, tiling_invariant};
use covers_core::polytopes::burniat::delta_bur;
use covers_core::polytopes::{verify_tiling, CellOrbit, Tiling};
use covers_core::{Error, Rational, SurfaceKind};
use std::collections::BTreeMap;

fn id_of(orbits: &[CellOrbit], cell: &covers_core::polytopes::Cell) -> String {
    orbits
        .iter()
        .find(|o| o.members.iter().any(|m| m.extra == cell.extra))
        .and_then(|o| o.representative.orbit_rep_id.clone())
        .expect("every tile is a maximal cell")
}

fn id_multiset(orbits: &[CellOrbit], t: &Tiling) -> Vec<String> {
    let mut v: Vec<String> = t.cells.iter().map(|c| id_of(orbits, c)).collect();
    v.sort();
    v
}

#[test]
fn table_metadata() {
    let m = cell_metadata("0").unwrap();
    assert_eq!((m.component_type, m.degree), (SurfaceKind::Sigma, 6));
    let m = cell_metadata("5").unwrap();
    assert_eq!((m.component_type, m.degree), (SurfaceKind::Bl4P2, 5));
    let m = cell_metadata("8").unwrap();
    assert_eq!((m.component_type, m.degree), (SurfaceKind::P2, 4));
    assert!(matches!(cell_metadata("10"), Err(Error::MissingMetadata(_))));
    assert_eq!(sigma_degree_from_lattice(), cell_metadata("0").unwrap().degree);
}

#[test]
fn ten_labeled_orbits() {
    let orbits = maximal_cell_orbits().unwrap();
    let sizes: BTreeMap<String, usize> = orbits
        .iter()
        .map(|o| (o.representative.orbit_rep_id.clone().unwrap(), o.members.len()))
        .collect();
    let expected: BTreeMap<String, usize> =
        [1, 6, 48, 24, 48, 6, 6, 1, 1, 6].iter().enumerate().map(|(i, &s)| (i.to_string(), s)).collect();
    assert_eq!(sizes, expected);
    // Orbit sizes add up with the group order: each size divides 48.
    assert!(orbits.iter().all(|o| 48 % o.members.len() == 0));
}

#[test]
fn orbit_ids_are_symmetry_invariant() {
    let orbits = maximal_cell_orbits().unwrap();
    let g = group().unwrap();
    for o in orbits {
        let id = o.representative.orbit_rep_id.clone().unwrap();
        for p in &g.elements {
            assert_eq!(id_of(orbits, &o.representative.apply(p)), id);
        }
    }
}

#[test]
fn cells_sit_inside_delta() {
    let d = delta_bur();
    for o in maximal_cell_orbits().unwrap() {
        let x = o.representative.interior_point12().expect("full-dimensional");
        assert!(d.contains(&x), "{:?}", o.representative.orbit_rep_id);
        assert_eq!(o.representative.dimension(), 8);
    }
}

#[test]
fn tilings_keep_degree_six() {
    let tilings = burniat_tilings().unwrap();
    assert!(!tilings.is_empty());
    for t in tilings {
        assert!(verify_tiling(t).ok);
        assert_eq!(tiling_invariant(t).unwrap(), (Rational::from_int(6), true));
    }
}

#[test]
fn tiling_types_are_symmetry_invariant() {
    let orbits = maximal_cell_orbits().unwrap();
    let g = group().unwrap();
    for t in burniat_tilings().unwrap() {
        let ids = id_multiset(orbits, t);
        for p in g.elements.iter().step_by(7) {
            assert_eq!(id_multiset(orbits, &t.apply(p)), ids);
        }
    }
}

#[test]
fn census_contains_the_named_surfaces() {
    let c = surface_census(burniat_tilings().unwrap()).unwrap();
    assert!(c.by_component_type.contains(&vec![SurfaceKind::Sigma]));
    assert!(c.by_component_type.contains(&vec![SurfaceKind::F1, SurfaceKind::F1]));
    assert!(c.by_component_type.contains(&vec![SurfaceKind::P1xP1; 3]));
}
