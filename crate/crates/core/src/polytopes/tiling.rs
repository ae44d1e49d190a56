//! Facet matching, tiling verification, and tiling enumeration.
//!
//! Coverage is tested on a fixed rational sample grid. Each sample is
//! pushed off every hyperplane by a symbolic perturbation `p + εv`, where
//! `v` has coordinates `100^i` (last one balancing the sum). A nonconstant
//! normal-form halfspace has small integer coefficients, so `g·v ≠ 0` and
//! every sample lands strictly inside exactly one cell of a tiling.

use super::burniat::{CanonicalHalfspace, Perm, SymmetryGroup};
use super::cells::{cell_polytope, delta_boundary, Cell, CellOrbit};
use crate::lattice_core::Rational;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Sample point: integer numerators over a common positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sample {
    pub num: [i64; 9],
    pub den: i64,
}

impl Sample {
    pub fn from_rationals(x9: &[Rational]) -> Sample {
        let den = x9.iter().fold(1i64, |acc, x| {
            acc.lcm(&x.denom().to_i64().expect("small denominators"))
        });
        let num = std::array::from_fn(|i| {
            (&x9[i] * &Rational::from_int(den)).to_i64().expect("integral after scaling")
        });
        Sample { num, den }
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.num.iter().map(|&n| Rational::new(n, self.den)).collect()
    }
}

fn perturbation() -> [i128; 9] {
    let mut v = [0i128; 9];
    let mut p = 1i128;
    for x in v.iter_mut().take(8) {
        *x = p;
        p *= 100;
    }
    v[8] = -v[..8].iter().sum::<i128>();
    v
}

/// Is the perturbed sample strictly inside `h`?
pub fn perturbed_inside(h: &CanonicalHalfspace, s: &Sample) -> bool {
    let (bn, bd) = h.bound.as_small().expect("small bound");
    let lhs: i128 = h.coeffs.iter().zip(&s.num).map(|(&g, &x)| g as i128 * x as i128).sum();
    let diff = lhs * bd as i128 - bn as i128 * s.den as i128;
    if diff != 0 {
        return diff < 0;
    }
    let v = perturbation();
    let gv: i128 = h.coeffs.iter().zip(&v).map(|(&g, &x)| g as i128 * x).sum();
    assert!(gv != 0, "perturbation direction lies on a cutting hyperplane");
    gv < 0
}

pub fn perturbed_in_cell(extra: &[CanonicalHalfspace], s: &Sample) -> bool {
    extra.iter().all(|h| perturbed_inside(h, s))
}

/// The deterministic grid: a0..c1 range over {1/4, 1/3, 5/12}, c2 closes
/// the sum to 3; plus the all-1/3 point. Only samples whose perturbation
/// lies inside Δ_bur are kept.
pub fn sample_grid() -> Vec<Sample> {
    let vals = [3i64, 4, 5];
    let boundary = delta_boundary();
    let mut out = BTreeSet::new();
    for code in 0..3usize.pow(8) {
        let mut num = [0i64; 9];
        let mut c = code;
        for x in num.iter_mut().take(8) {
            *x = vals[c % 3];
            c /= 3;
        }
        num[8] = 36 - num[..8].iter().sum::<i64>();
        let s = Sample { num, den: 12 };
        if perturbed_in_cell(&boundary, &s) {
            out.insert(s);
        }
    }
    out.insert(Sample { num: [4; 9], den: 12 });
    out.into_iter().collect()
}

/// Shared facet of two cells: `h` in A whose complement is in B, with a
/// 7-dimensional common face.
pub fn facet_match(a: &Cell, b: &Cell) -> Option<CanonicalHalfspace> {
    for h in &a.extra {
        let f = h.flip();
        if b.extra.contains(&f) {
            let mut both = a.extra.clone();
            both.extend(b.extra.iter().cloned());
            if cell_polytope(&both).dimension() == 7 {
                return Some(h.clone());
            }
        }
    }
    None
}

/// Do the interiors of two cells meet?
pub fn interiors_meet(a: &Cell, b: &Cell) -> bool {
    let mut both = a.extra.clone();
    both.extend(b.extra.iter().cloned());
    matches!(cell_polytope(&both).max_uniform_slack(), Some(t) if t.is_positive())
}

#[derive(Clone, Debug, Serialize)]
pub struct Adjacency {
    pub a: usize,
    pub b: usize,
    pub facet: CanonicalHalfspace,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tiling {
    pub cells: Vec<Cell>,
    pub adjacency: Vec<Adjacency>,
}

#[derive(Clone, Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TilingReport {
    pub ok: bool,
    pub disjoint: bool,
    pub facets_matched: bool,
    pub connected: bool,
    pub covered_once: bool,
    pub diagnostics: Vec<String>,
}

impl Tiling {
    /// Builds the adjacency list from pairwise facet matches.
    pub fn from_cells(cells: Vec<Cell>) -> Tiling {
        let mut adjacency = Vec::new();
        for i in 0..cells.len() {
            for j in (i + 1)..cells.len() {
                if let Some(h) = facet_match(&cells[i], &cells[j]) {
                    adjacency.push(Adjacency { a: i, b: j, facet: h });
                }
            }
        }
        Tiling { cells, adjacency }
    }

    /// Normal form modulo the group: sorted cell list, minimized over all
    /// relabelings.
    pub fn canonical_key(&self, group: &SymmetryGroup) -> Vec<Vec<CanonicalHalfspace>> {
        group
            .elements
            .iter()
            .map(|g| {
                let mut k: Vec<Vec<CanonicalHalfspace>> =
                    self.cells.iter().map(|c| c.apply(g).extra).collect();
                k.sort();
                k
            })
            .min()
            .expect("nonempty group")
    }

    pub fn apply(&self, g: &Perm) -> Tiling {
        Tiling::from_cells(self.cells.iter().map(|c| c.apply(g)).collect())
    }
}

/// Checks (a) interiors pairwise disjoint, (b) every cutting facet matched
/// by a complementary facet that covers its interior point, (c) connected
/// adjacency, (d) every grid sample covered exactly once.
pub fn verify_tiling(t: &Tiling) -> TilingReport {
    verify_with_samples(t, &sample_grid())
}

pub fn verify_with_samples(t: &Tiling, samples: &[Sample]) -> TilingReport {
    let mut r = TilingReport { disjoint: true, facets_matched: true, connected: true, covered_once: true, ..Default::default() };
    let n = t.cells.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if interiors_meet(&t.cells[i], &t.cells[j]) {
                r.disjoint = false;
                let mut both = t.cells[i].extra.clone();
                both.extend(t.cells[j].extra.iter().cloned());
                let w = cell_polytope(&both)
                    .relative_interior_point()
                    .map(|x| x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
                    .unwrap_or_default();
                r.diagnostics.push(format!("cells {i} and {j} overlap; common interior point ({w})"));
            }
        }
    }
    for (i, c) in t.cells.iter().enumerate() {
        for h in &c.extra {
            let neighbours: Vec<usize> = t
                .adjacency
                .iter()
                .filter_map(|a| {
                    if a.a == i && a.facet == *h {
                        Some(a.b)
                    } else if a.b == i && a.facet == h.flip() {
                        Some(a.a)
                    } else {
                        None
                    }
                })
                .collect();
            // An interior point of the facet must lie in one of the
            // neighbours sharing it.
            let mut face = c.extra.clone();
            face.push(h.flip());
            let covered = cell_polytope(&face).relative_interior_point().is_some_and(|y| {
                neighbours.iter().any(|&j| cell_polytope(&t.cells[j].extra).contains(&y))
            });
            if !covered {
                r.facets_matched = false;
                r.diagnostics.push(format!("cell {i}: facet {} is unmatched", h.pretty()));
            }
        }
    }
    if n > 0 {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for a in &t.adjacency {
                for (u, v) in [(a.a, a.b), (a.b, a.a)] {
                    if u == x && !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            r.connected = false;
            r.diagnostics.push("adjacency graph is disconnected".into());
        }
    }
    for s in samples {
        let m = t.cells.iter().filter(|c| perturbed_in_cell(&c.extra, s)).count();
        if m != 1 {
            r.covered_once = false;
            let p: Vec<String> = s.to_rationals().iter().map(|x| x.to_string()).collect();
            r.diagnostics.push(format!("sample ({}) covered {m} times", p.join(",")));
            break;
        }
    }
    if r.covered_once != r.facets_matched && r.disjoint {
        r.diagnostics.push("coverage and facet matching disagree".into());
    }
    r.ok = r.disjoint && r.facets_matched && r.connected && r.covered_once;
    r
}

struct Search<'a> {
    cells: &'a [Cell],
    sets: Vec<Vec<u64>>,
    by_sample: Vec<Vec<usize>>,
    nsamples: usize,
}

impl Search<'_> {
    fn first_uncovered(&self, covered: &[u64]) -> Option<usize> {
        (0..self.nsamples).find(|&s| covered[s / 64] >> (s % 64) & 1 == 0)
    }

    fn fits(&self, c: usize, covered: &[u64]) -> bool {
        self.sets[c].iter().zip(covered).all(|(a, b)| a & b == 0)
    }

    fn dfs(&self, chosen: &mut Vec<usize>, covered: &mut Vec<u64>, out: &mut Vec<Vec<usize>>, pairs: &mut HashMap<(usize, usize), bool>) {
        let Some(s) = self.first_uncovered(covered) else {
            out.push(chosen.clone());
            return;
        };
        for &c in &self.by_sample[s] {
            if !self.fits(c, covered) {
                continue;
            }
            let ok = chosen.iter().all(|&d| {
                let key = (c.min(d), c.max(d));
                *pairs.entry(key).or_insert_with(|| !interiors_meet(&self.cells[c], &self.cells[d]))
            });
            if !ok {
                continue;
            }
            chosen.push(c);
            for (x, y) in covered.iter_mut().zip(&self.sets[c]) {
                *x |= y;
            }
            self.dfs(chosen, covered, out, pairs);
            for (x, y) in covered.iter_mut().zip(&self.sets[c]) {
                *x &= !y;
            }
            chosen.pop();
        }
    }
}

/// All tilings of Δ_bur by translates of the given orbits, modulo the
/// group, each verified. Sorted by size, then by normal form.
pub fn enumerate_tilings(orbits: &[CellOrbit], group: &SymmetryGroup) -> Vec<Tiling> {
    let mut cells: Vec<Cell> = Vec::new();
    for o in orbits {
        for m in &o.members {
            let mut m = m.clone();
            m.orbit_rep_id = o.representative.orbit_rep_id.clone();
            cells.push(m);
        }
    }
    let mut samples = sample_grid();
    // Cells thin enough to miss the grid contribute their own interior point.
    for c in &cells {
        if !samples.iter().any(|s| perturbed_in_cell(&c.extra, s)) {
            if let Some(x) = cell_polytope(&c.extra).relative_interior_point() {
                samples.push(Sample::from_rationals(&x));
            }
        }
    }
    let nsamples = samples.len();
    let words = nsamples.div_ceil(64);
    let sets: Vec<Vec<u64>> = cells
        .par_iter()
        .map(|c| {
            let mut v = vec![0u64; words];
            for (i, s) in samples.iter().enumerate() {
                if perturbed_in_cell(&c.extra, s) {
                    v[i / 64] |= 1 << (i % 64);
                }
            }
            v
        })
        .collect();
    let mut by_sample = vec![Vec::new(); nsamples];
    for (c, set) in sets.iter().enumerate() {
        for (i, list) in by_sample.iter_mut().enumerate() {
            if set[i / 64] >> (i % 64) & 1 == 1 {
                list.push(c);
            }
        }
    }
    let search = Search { cells: &cells, sets, by_sample, nsamples };
    let roots: Vec<usize> = search.by_sample.first().cloned().unwrap_or_default();
    let found: Vec<Vec<usize>> = roots
        .par_iter()
        .flat_map_iter(|&c| {
            let mut covered = search.sets[c].clone();
            let mut chosen = vec![c];
            let mut out = Vec::new();
            let mut pairs = HashMap::new();
            search.dfs(&mut chosen, &mut covered, &mut out, &mut pairs);
            out
        })
        .collect();
    let mut unique: BTreeMap<Vec<Vec<CanonicalHalfspace>>, Tiling> = BTreeMap::new();
    for idxs in found {
        let t = Tiling::from_cells(idxs.iter().map(|&i| cells[i].clone()).collect());
        let key = t.canonical_key(group);
        unique.entry(key).or_insert(t);
    }
    let mut tilings: Vec<(Vec<Vec<CanonicalHalfspace>>, Tiling)> = unique
        .into_iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(|(_, t)| verify_with_samples(t, &samples).ok)
        .collect();
    tilings.sort_by(|a, b| a.1.cells.len().cmp(&b.1.cells.len()).then_with(|| a.0.cmp(&b.0)));
    tilings.into_iter().map(|(k, _)| {
        let cells_by_key: BTreeMap<Vec<CanonicalHalfspace>, Cell> =
            cells.iter().map(|c| (c.extra.clone(), c.clone())).collect();
        Tiling::from_cells(k.iter().map(|e| cells_by_key[e].clone()).collect())
    }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytopes::cells::normalize_cell;
    use crate::polytopes::parse_inequality;

    #[test]
    fn grid_is_nonempty_and_inside() {
        let g = sample_grid();
        assert!(g.len() > 100);
        assert!(g.contains(&Sample { num: [4; 9], den: 12 }));
    }

    #[test]
    fn trivial_tiling_verifies() {
        let t = Tiling::from_cells(vec![Cell::delta()]);
        assert!(verify_tiling(&t).ok);
    }

    #[test]
    fn overlapping_cells_fail() {
        let c = normalize_cell(&[parse_inequality("a0+b0+c0<=1").unwrap()]).unwrap().unwrap();
        let t = Tiling::from_cells(vec![Cell::delta(), c]);
        let r = verify_tiling(&t);
        assert!(!r.ok && !r.disjoint);
        assert!(r.diagnostics[0].contains("common interior point"));
    }

    #[test]
    fn complementary_halves_match() {
        let a = normalize_cell(&[parse_inequality("a0+b0+c0<=1").unwrap()]).unwrap().unwrap();
        let b = normalize_cell(&[parse_inequality("a0+b0+c0>=1").unwrap()]).unwrap().unwrap();
        assert!(facet_match(&a, &b).is_some());
        assert!(facet_match(&Cell::delta(), &a).is_none());
        let t = Tiling::from_cells(vec![a, b]);
        assert!(verify_tiling(&t).ok);
    }
}
