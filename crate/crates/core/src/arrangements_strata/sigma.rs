//! lc scan of a Burniat arrangement on Σ = Bl₃ℙ².
//!
//! Each of the nine line divisors is the total transform of its line minus
//! the exceptional curves its class subtracts, so a line through a blown-up
//! point its class does not subtract picks up that exceptional curve as an
//! extra component. With every weight ½, a curve component carried by three
//! or more divisors, or a point with five or more divisor incidences,
//! violates log canonicity. The violated inequalities, reduced to an
//! irredundant set relative to Δ_bur, form the degeneration label.

use super::{ArrangementKind, LineArrangement, PVec};
use crate::error::{Error, Result};
use crate::lattice_core::Rational;
use crate::polytopes::cells::{normalize_canonical, trivial_on_delta};
use crate::polytopes::{canonical, coord_index, Canonical, CanonicalHalfspace, Halfspace};
use serde::Serialize;
use std::collections::BTreeSet;

pub(crate) const LINE_LABELS: [&str; 9] = ["A0", "A1", "A2", "B0", "B1", "B2", "C0", "C1", "C2"];
const CENTER_NAMES: [&str; 3] = ["PA", "PB", "PC"];
const EXCEPTIONAL: [&str; 3] = ["A3", "B3", "C3"];

/// Blown-up points subtracted in the class of each line divisor
/// (0 = P_A, 1 = P_B, 2 = P_C).
fn subtracted(label: &str) -> &'static [usize] {
    match label {
        "A0" => &[1, 2],
        "A1" | "A2" => &[1],
        "B0" => &[2, 0],
        "B1" | "B2" => &[2],
        "C0" => &[0, 1],
        _ => &[0],
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaComponent {
    pub name: String,
    pub carriers: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaPoint {
    pub location: String,
    pub components: Vec<usize>,
    pub incidences: usize,
}

/// Violated inequalities that survive reduction against Δ_bur; empty
/// exactly for lc arrangements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DegenerationLabel {
    pub violated: Vec<CanonicalHalfspace>,
}

impl DegenerationLabel {
    pub fn pretty(&self) -> Vec<String> {
        self.violated.iter().map(|h| h.pretty()).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaScan {
    pub components: Vec<SigmaComponent>,
    pub points: Vec<SigmaPoint>,
    pub lc: bool,
    pub label: DegenerationLabel,
    /// Every violated inequality, in twelve coordinates, before reduction.
    #[serde(skip)]
    pub violated: Vec<Halfspace>,
}

fn indicator(labels: &[&str]) -> Vec<i64> {
    let mut v = vec![0i64; 12];
    for l in labels {
        v[coord_index(l).expect("static label")] += 1;
    }
    v
}

fn to_halfspace(v: &[i64], bound: i64) -> Halfspace {
    Halfspace::le(v.iter().map(|&c| Rational::from_int(c)).collect(), Rational::from_int(bound))
}

/// Resolves P_A, P_B, P_C: explicit points win, otherwise the pairwise
/// intersections of the triangle sides.
fn centers(arr: &LineArrangement, lines: &[PVec]) -> Result<[PVec; 3]> {
    let side = |i: usize| &lines[i * 3];
    let mut out = Vec::new();
    for (k, name) in CENTER_NAMES.iter().enumerate() {
        if let Some(p) = arr.points.as_ref().and_then(|m| m.get(*name)) {
            out.push(super::pvec(p));
            continue;
        }
        // P_A = B0 ∩ C0, P_B = C0 ∩ A0, P_C = A0 ∩ B0.
        let (u, v) = (side((k + 1) % 3), side((k + 2) % 3));
        let p = u.cross(v);
        if p.is_zero() {
            return Err(Error::InvalidArrangement(format!(
                "{name} is undetermined: the triangle sides coincide; pass it under \"points\""
            )));
        }
        out.push(p);
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            if out[i].same(&out[j]) {
                return Err(Error::InvalidArrangement(format!(
                    "{} and {} coincide",
                    CENTER_NAMES[i], CENTER_NAMES[j]
                )));
            }
        }
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

/// lc scan on Σ with all twelve weights ½.
pub fn arrangement_lc_scan(arr: &LineArrangement) -> Result<SigmaScan> {
    if arr.kind != ArrangementKind::Burniat {
        return Err(Error::InvalidArrangement("lc scan on Σ needs a burniat arrangement".into()));
    }
    let mut lines = Vec::with_capacity(9);
    for l in LINE_LABELS {
        lines.push(arr.line(l).ok_or_else(|| Error::InvalidArrangement(format!("missing line {l}")))?);
    }
    for l in &arr.lines {
        if !LINE_LABELS.contains(&l.label.as_str()) && !EXCEPTIONAL.contains(&l.label.as_str()) {
            return Err(Error::InvalidArrangement(format!("unknown label {}", l.label)));
        }
    }
    let p = centers(arr, &lines)?;
    for (i, l) in LINE_LABELS.iter().enumerate() {
        for &c in subtracted(l) {
            if !lines[i].dot(&p[c]).is_zero() {
                return Err(Error::InvalidArrangement(format!(
                    "{l} must pass through {}",
                    CENTER_NAMES[c]
                )));
            }
        }
    }

    // Components: distinct lines, then E_A, E_B, E_C.
    let mut distinct: Vec<PVec> = Vec::new();
    let mut comp_of = [0usize; 9];
    for (i, l) in lines.iter().enumerate() {
        comp_of[i] = match distinct.iter().position(|d| d.same(l)) {
            Some(j) => j,
            None => {
                distinct.push(l.clone());
                distinct.len() - 1
            }
        };
    }
    let m = distinct.len();
    let mut carriers: Vec<Vec<&str>> = vec![Vec::new(); m + 3];
    for (i, l) in LINE_LABELS.iter().enumerate() {
        carriers[comp_of[i]].push(l);
        for (c, pc) in p.iter().enumerate() {
            if lines[i].dot(pc).is_zero() && !subtracted(l).contains(&c) {
                carriers[m + c].push(l);
            }
        }
    }
    for c in 0..3 {
        carriers[m + c].push(EXCEPTIONAL[c]);
    }
    let components: Vec<SigmaComponent> = (0..m + 3)
        .map(|j| {
            let name = if j < m {
                let on: Vec<&str> =
                    LINE_LABELS.iter().enumerate().filter(|(i, _)| comp_of[*i] == j).map(|(_, l)| *l).collect();
                format!("line[{}]", on.join("="))
            } else {
                format!("E over {}", CENTER_NAMES[j - m])
            };
            SigmaComponent { name, carriers: carriers[j].iter().map(|s| s.to_string()).collect() }
        })
        .collect();

    // Points with at least two components.
    let mut points: Vec<SigmaPoint> = Vec::new();
    let mut seen: BTreeSet<PVec> = BTreeSet::new();
    for i in 0..m {
        for j in (i + 1)..m {
            let q = distinct[i].cross(&distinct[j]).normalized();
            if p.iter().any(|c| c.same(&q)) || !seen.insert(q.clone()) {
                continue;
            }
            let through: Vec<usize> = (0..m).filter(|&k| distinct[k].dot(&q).is_zero()).collect();
            let incidences = through.iter().map(|&k| carriers[k].len()).sum();
            points.push(SigmaPoint { location: q.to_string(), components: through, incidences });
        }
    }
    for (c, pc) in p.iter().enumerate() {
        for k in 0..m {
            if distinct[k].dot(pc).is_zero() {
                let incidences = carriers[k].len() + carriers[m + c].len();
                points.push(SigmaPoint {
                    location: format!("{} toward {}", components[m + c].name, components[k].name),
                    components: vec![k, m + c],
                    incidences,
                });
            }
        }
    }

    let mut violated = Vec::new();
    for c in &carriers {
        if c.len() >= 3 {
            violated.push(to_halfspace(&indicator(c), 1));
        }
    }
    for pt in &points {
        if pt.incidences >= 5 {
            let mut v = vec![0i64; 12];
            for &k in &pt.components {
                for (a, b) in v.iter_mut().zip(indicator(&carriers[k])) {
                    *a += b;
                }
            }
            violated.push(to_halfspace(&v, 2));
        }
    }
    let label = DegenerationLabel { violated: minimal_label(&violated)? };
    Ok(SigmaScan { components, points, lc: violated.is_empty(), label, violated })
}

/// Drops inequalities implied by Δ_bur and the others. When the region is
/// not full-dimensional every nontrivial inequality is kept.
pub fn minimal_label(hs: &[Halfspace]) -> Result<Vec<CanonicalHalfspace>> {
    let mut set = BTreeSet::new();
    for h in hs {
        if let Canonical::Proper(c) = canonical(h)? {
            set.insert(c);
        }
    }
    let nontrivial: Vec<CanonicalHalfspace> = set.into_iter().filter(|h| !trivial_on_delta(h)).collect();
    Ok(match normalize_canonical(nontrivial.clone()) {
        Some(cell) => cell.extra,
        None => nontrivial,
    })
}
