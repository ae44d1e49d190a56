//! Maximal cells with their component data, tilings of Δ_bur, the degree
//! sum, and the census of degenerate surfaces.

use super::configs::candidate_systems;
use crate::error::{Error, Result};
use crate::lattice_core::{intersect_classes, BaseSurface, Rational, SurfaceKind};
use super::sigma::DegenerationLabel;
use crate::polytopes::cells::{normalize_cell, orbit_of};
use crate::polytopes::{
    enumerate_maximal_cells, enumerate_tilings, parse_inequality, symmetry_group, Cell, CellOrbit,
    SymmetryGroup, Tiling,
};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

struct Row {
    id: &'static str,
    inequalities: &'static [&'static str],
    component: SurfaceKind,
    degree: i64,
    case_ref: Option<u8>,
}

/// The maximal intersections: component Y_j, degree 4(K_{Y_j}+D_j)², and
/// the degeneration case they come from.
const ROWS: [Row; 10] = [
    Row { id: "0", inequalities: &[], component: SurfaceKind::Sigma, degree: 6, case_ref: None },
    Row { id: "1", inequalities: &["a0+a1+a2<=1", "c3+a1+a2<=1"], component: SurfaceKind::P1xP1, degree: 2, case_ref: Some(1) },
    Row { id: "2", inequalities: &["a0+a1+b2<=1", "c3+c2+a1<=1"], component: SurfaceKind::P1xP1, degree: 2, case_ref: Some(2) },
    Row { id: "3", inequalities: &["a0+a1+b2<=1"], component: SurfaceKind::F1, degree: 3, case_ref: Some(6) },
    Row { id: "4", inequalities: &["c3+c2+a1<=1", "b3+b2+c1<=1"], component: SurfaceKind::P2, degree: 1, case_ref: Some(7) },
    Row { id: "5", inequalities: &["a1+a2+b1+b2+c1<=2"], component: SurfaceKind::Bl4P2, degree: 5, case_ref: Some(8) },
    Row { id: "6", inequalities: &["a0+b0+c0+c2<=1"], component: SurfaceKind::P2, degree: 1, case_ref: Some(8) },
    Row { id: "7", inequalities: &["a1+a2+b1+b2+c1+c2<=2"], component: SurfaceKind::P1xP1, degree: 2, case_ref: Some(9) },
    Row { id: "8", inequalities: &["a0+b0+c0<=1"], component: SurfaceKind::P2, degree: 4, case_ref: Some(9) },
    Row { id: "9", inequalities: &["a0+b0+c0<=1", "a1+a2+b1+b2+c1<=2"], component: SurfaceKind::F1, degree: 3, case_ref: Some(10) },
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CellMetadata {
    pub orbit_rep_id: String,
    pub component_type: SurfaceKind,
    pub degree: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case_ref: Option<u8>,
    pub inequalities: Vec<String>,
}

pub fn cell_metadata(id: &str) -> Result<CellMetadata> {
    let row = ROWS
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::MissingMetadata(format!("no cell type {id:?}")))?;
    Ok(CellMetadata {
        orbit_rep_id: row.id.to_string(),
        component_type: row.component,
        degree: row.degree,
        case_ref: row.case_ref,
        inequalities: row.inequalities.iter().map(|s| s.to_string()).collect(),
    })
}

pub fn all_cell_metadata() -> Vec<CellMetadata> {
    ROWS.iter().map(|r| cell_metadata(r.id).expect("static")).collect()
}

/// The untouched surface has degree K_Σ²; this pins the row-0 entry to the
/// lattice.
pub fn sigma_degree_from_lattice() -> i64 {
    let s = BaseSurface::sigma();
    intersect_classes(&s.canonical_class, &s.canonical_class, &s).expect("rank 4")
}

/// The normalized cell of a table row.
pub fn row_cell(id: &str) -> Result<Cell> {
    let meta = cell_metadata(id)?;
    let hs = meta.inequalities.iter().map(|s| parse_inequality(s)).collect::<Result<Vec<_>>>()?;
    let mut c = normalize_cell(&hs)?
        .ok_or_else(|| Error::InvalidInput(format!("row {id} is not full-dimensional")))?;
    c.orbit_rep_id = Some(id.to_string());
    Ok(c)
}

/// Attaches table ids to orbits; returns the ids that matched nothing.
pub fn label_orbits(orbits: &mut [CellOrbit]) -> Result<Vec<String>> {
    let mut unmatched = Vec::new();
    for r in &ROWS {
        let cell = row_cell(r.id)?;
        match orbits.iter_mut().find(|o| o.members.iter().any(|m| m.extra == cell.extra)) {
            Some(o) => {
                o.representative.orbit_rep_id = Some(r.id.to_string());
                for m in &mut o.members {
                    m.orbit_rep_id = Some(r.id.to_string());
                }
            }
            None => unmatched.push(r.id.to_string()),
        }
    }
    Ok(unmatched)
}

/// The table row whose cell orbit contains the cell cut out by a
/// degeneration label. The empty label is row 0.
pub fn row_of_label(label: &DegenerationLabel) -> Result<Option<String>> {
    let hs: Vec<_> = label.violated.iter().map(|h| h.to_halfspace()).collect();
    let Some(cell) = normalize_cell(&hs)? else { return Ok(None) };
    let g = group()?;
    for r in &ROWS {
        let rc = row_cell(r.id)?;
        if orbit_of(&rc, g).iter().any(|m| m.extra == cell.extra) {
            return Ok(Some(r.id.to_string()));
        }
    }
    Ok(None)
}

pub fn group() -> Result<&'static SymmetryGroup> {
    static G: OnceLock<std::result::Result<SymmetryGroup, Error>> = OnceLock::new();
    G.get_or_init(symmetry_group).as_ref().map_err(Clone::clone)
}

/// Orbits of maximal cells obtained from all degenerate configurations,
/// with table ids attached where they match. Computed once per process.
pub fn maximal_cell_orbits() -> Result<&'static [CellOrbit]> {
    static O: OnceLock<std::result::Result<Vec<CellOrbit>, Error>> = OnceLock::new();
    O.get_or_init(|| {
        let g = group()?;
        let mut orbits = enumerate_maximal_cells(&candidate_systems()?, g)?;
        label_orbits(&mut orbits)?;
        orbits.sort_by(|a, b| {
            let key = |o: &CellOrbit| o.representative.orbit_rep_id.clone().unwrap_or_else(|| "~".into());
            key(a).cmp(&key(b)).then_with(|| a.representative.cmp(&b.representative))
        });
        Ok(orbits)
    })
    .as_deref()
    .map_err(Clone::clone)
}

/// All tilings of Δ_bur by the maximal cells, up to symmetry.
pub fn burniat_tilings() -> Result<&'static [Tiling]> {
    static T: OnceLock<std::result::Result<Vec<Tiling>, Error>> = OnceLock::new();
    T.get_or_init(|| Ok(enumerate_tilings(maximal_cell_orbits()?, group()?)))
        .as_deref()
        .map_err(Clone::clone)
}

fn meta_of(c: &Cell) -> Result<CellMetadata> {
    let id = c
        .orbit_rep_id
        .as_deref()
        .ok_or_else(|| Error::MissingMetadata(format!("cell {:?} has no type", c.pretty())))?;
    cell_metadata(id)
}

/// Σ of the degrees 4(K_{Y_j}+D_j)² over the cells, and whether it is 6.
pub fn tiling_invariant(t: &Tiling) -> Result<(Rational, bool)> {
    let mut sum = Rational::zero();
    for c in &t.cells {
        sum += Rational::from_int(meta_of(c)?.degree);
    }
    let ok = sum == Rational::from_int(6);
    Ok((sum, ok))
}

/// Distinct surfaces among the tilings, keyed two ways: by the multiset of
/// component types, and by the finer multiset of cell types.
#[derive(Clone, Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Census {
    pub by_component_type: BTreeSet<Vec<SurfaceKind>>,
    pub by_cell_type: BTreeSet<Vec<String>>,
}

pub fn surface_census(tilings: &[Tiling]) -> Result<Census> {
    let mut c = Census::default();
    for t in tilings {
        let mut kinds = Vec::new();
        let mut ids = Vec::new();
        for cell in &t.cells {
            let m = meta_of(cell)?;
            kinds.push(m.component_type);
            ids.push(m.orbit_rep_id);
        }
        kinds.sort();
        ids.sort();
        c.by_component_type.insert(kinds);
        c.by_cell_type.insert(ids);
    }
    Ok(c)
}

/// Orbit sizes keyed by table id, for reporting.
pub fn orbit_sizes(orbits: &[CellOrbit]) -> BTreeMap<String, usize> {
    orbits
        .iter()
        .map(|o| (o.representative.orbit_rep_id.clone().unwrap_or_else(|| "?".into()), o.members.len()))
        .collect()
}
