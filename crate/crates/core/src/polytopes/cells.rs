//! Cells: Δ_bur cut by flat halfspaces, their normal forms and orbits.

use super::burniat::{canonical, Canonical, CanonicalHalfspace, Perm, SymmetryGroup, FREE};
use super::lp::LpOutcome;
use super::{Equation, Halfspace, Polytope, Sense};
use crate::error::Result;
use crate::lattice_core::Rational;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Δ_bur in the nine free coordinates.
pub fn delta9() -> Polytope {
    let mut p = Polytope::new(9);
    p.equalities.push(Equation { coeffs: vec![Rational::one(); 9], rhs: Rational::from_int(3) });
    for i in 0..9 {
        let mut c = vec![Rational::zero(); 9];
        c[i] = Rational::one();
        p.inequalities.push(Halfspace { coeffs: c.clone(), bound: Rational::zero(), sense: Sense::Ge });
        p.inequalities.push(Halfspace::le(c, Rational::half()));
    }
    for (_, rhs) in super::burniat::index3_definitions() {
        let mut c = vec![Rational::zero(); 9];
        for j in rhs {
            c[FREE.iter().position(|&f| f == j).expect("free")] = Rational::one();
        }
        // 0 ≤ Σ − 1 ≤ ½
        p.inequalities.push(Halfspace { coeffs: c.clone(), bound: Rational::one(), sense: Sense::Ge });
        p.inequalities.push(Halfspace::le(c, Rational::new(3, 2)));
    }
    p
}

pub(crate) fn to9(h: &CanonicalHalfspace) -> Halfspace {
    Halfspace::le(h.coeffs.iter().map(|&c| Rational::from_int(c)).collect(), h.bound.clone())
}

/// Δ_bur ∩ extras in free coordinates.
pub fn cell_polytope(extra: &[CanonicalHalfspace]) -> Polytope {
    delta9().with(extra.iter().map(to9))
}

/// Boundary hyperplanes of Δ_bur in normal form.
pub fn delta_boundary() -> Vec<CanonicalHalfspace> {
    super::burniat::delta_bur()
        .inequalities
        .iter()
        .map(|h| match canonical(h).expect("twelve coefficients") {
            Canonical::Proper(c) => c,
            _ => unreachable!(),
        })
        .collect()
}

/// True when `h` cuts nothing off Δ_bur.
pub fn trivial_on_delta(h: &CanonicalHalfspace) -> bool {
    let obj: Vec<Rational> = h.coeffs.iter().map(|&c| Rational::from_int(c)).collect();
    match delta9().maximize(&obj) {
        LpOutcome::Optimal { value, .. } => value <= h.bound,
        _ => unreachable!("Δ_bur is nonempty and bounded"),
    }
}

/// A cell Δ_bur ∩ {extra}. `extra` is irredundant, free of halfspaces
/// trivial on Δ_bur, and sorted, so it is a normal form of the cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Cell {
    pub extra: Vec<CanonicalHalfspace>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_rep_id: Option<String>,
}

impl Cell {
    pub fn delta() -> Self {
        Cell { extra: Vec::new(), orbit_rep_id: Some("0".into()) }
    }

    pub fn polytope(&self) -> Polytope {
        cell_polytope(&self.extra)
    }

    pub fn dimension(&self) -> i64 {
        self.polytope().dimension()
    }

    pub fn apply(&self, p: &Perm) -> Cell {
        let mut extra: Vec<CanonicalHalfspace> = self.extra.iter().map(|h| h.apply(p)).collect();
        extra.sort();
        Cell { extra, orbit_rep_id: self.orbit_rep_id.clone() }
    }

    pub fn key(&self) -> Vec<CanonicalHalfspace> {
        self.extra.clone()
    }

    /// Relative interior point in the twelve coordinates.
    pub fn interior_point12(&self) -> Option<Vec<Rational>> {
        self.polytope().relative_interior_point().map(|x9| free_to_full(&x9))
    }

    pub fn pretty(&self) -> Vec<String> {
        self.extra.iter().map(|h| h.pretty()).collect()
    }
}

/// Completes nine free coordinates to all twelve.
pub fn free_to_full(x9: &[Rational]) -> Vec<Rational> {
    let mut x = vec![Rational::zero(); 12];
    for (i, &f) in FREE.iter().enumerate() {
        x[f] = x9[i].clone();
    }
    for (lhs, rhs) in super::burniat::index3_definitions() {
        x[lhs] = rhs.iter().map(|&j| x[j].clone()).sum::<Rational>() - Rational::one();
    }
    x
}

/// Normal form of Δ_bur ∩ constraints. Returns `None` when the
/// intersection is not full-dimensional.
pub fn normalize_cell(constraints: &[Halfspace]) -> Result<Option<Cell>> {
    let mut hs: BTreeSet<CanonicalHalfspace> = BTreeSet::new();
    for h in constraints {
        match canonical(h)? {
            Canonical::Always => {}
            Canonical::Never => return Ok(None),
            Canonical::Proper(c) => {
                hs.insert(c);
            }
        }
    }
    Ok(normalize_canonical(hs.into_iter().collect()))
}

pub(crate) fn normalize_canonical(hs: Vec<CanonicalHalfspace>) -> Option<Cell> {
    let mut hs: Vec<CanonicalHalfspace> =
        hs.into_iter().collect::<BTreeSet<_>>().into_iter().filter(|h| !trivial_on_delta(h)).collect();
    if cell_polytope(&hs).dimension() < 8 {
        return None;
    }
    let mut i = 0;
    while i < hs.len() {
        let others: Vec<CanonicalHalfspace> =
            hs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h.clone()).collect();
        let obj: Vec<Rational> = hs[i].coeffs.iter().map(|&c| Rational::from_int(c)).collect();
        let redundant = match cell_polytope(&others).maximize(&obj) {
            LpOutcome::Optimal { value, .. } => value <= hs[i].bound,
            _ => false,
        };
        if redundant {
            hs.remove(i);
        } else {
            i += 1;
        }
    }
    Some(Cell { extra: hs, orbit_rep_id: None })
}

/// One symmetry orbit of maximal cells.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CellOrbit {
    pub representative: Cell,
    pub members: Vec<Cell>,
}

/// Orbit of `c`: all distinct translates, sorted; the first is the
/// lexicographically least and serves as representative.
pub fn orbit_of(c: &Cell, group: &SymmetryGroup) -> Vec<Cell> {
    let set: BTreeSet<Cell> = group
        .elements
        .iter()
        .map(|g| {
            let mut t = c.apply(g);
            t.orbit_rep_id = None;
            t
        })
        .collect();
    set.into_iter().collect()
}

/// Maximal cells among the candidate constraint systems (each a list of
/// halfspaces intersected with Δ_bur), reduced modulo the symmetry group.
/// Orbits come out sorted by representative.
pub fn enumerate_maximal_cells(
    candidates: &[Vec<Halfspace>],
    group: &SymmetryGroup,
) -> Result<Vec<CellOrbit>> {
    let mut systems: BTreeSet<Vec<CanonicalHalfspace>> = BTreeSet::new();
    for cand in candidates {
        let mut v = Vec::new();
        let mut never = false;
        for h in cand {
            match canonical(h)? {
                Canonical::Proper(c) => v.push(c),
                Canonical::Always => {}
                Canonical::Never => never = true,
            }
        }
        if !never {
            v.sort();
            v.dedup();
            systems.insert(v);
        }
    }
    let systems: Vec<Vec<CanonicalHalfspace>> = systems.into_iter().collect();
    let cells: BTreeSet<Cell> =
        systems.into_par_iter().filter_map(normalize_canonical).collect::<Vec<_>>().into_iter().collect();
    let mut orbits: BTreeMap<Cell, Vec<Cell>> = BTreeMap::new();
    let mut placed: BTreeSet<Cell> = BTreeSet::new();
    for c in cells {
        if placed.contains(&c) {
            continue;
        }
        let members = orbit_of(&c, group);
        placed.extend(members.iter().cloned());
        orbits.insert(members[0].clone(), members);
    }
    Ok(orbits
        .into_iter()
        .map(|(representative, members)| CellOrbit { representative, members })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytopes::parse_inequality;

    #[test]
    fn delta_is_eight_dimensional() {
        assert_eq!(delta9().dimension(), 8);
        assert_eq!(super::super::burniat::delta_bur().dimension(), 8);
    }

    #[test]
    fn row_one_cell_is_maximal() {
        let hs = vec![parse_inequality("a0+a1+a2<=1").unwrap(), parse_inequality("c3+a1+a2<=1").unwrap()];
        let c = normalize_cell(&hs).unwrap().unwrap();
        assert_eq!(c.extra.len(), 2);
    }

    #[test]
    fn contradictory_pair_is_empty() {
        let hs = vec![parse_inequality("a0+a1+a2<=0").unwrap(), parse_inequality("a0+a1+a2>=1").unwrap()];
        assert!(normalize_cell(&hs).unwrap().is_none());
        let p = super::super::burniat::delta_bur().with(hs);
        assert_eq!(p.dimension(), -1);
    }

    #[test]
    fn slack_singleton_is_trivial() {
        let hs = vec![parse_inequality("a0<=1").unwrap()];
        assert_eq!(normalize_cell(&hs).unwrap().unwrap().extra.len(), 0);
    }
}
