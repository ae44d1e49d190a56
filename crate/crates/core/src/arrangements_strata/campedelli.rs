//! Seven labeled lines in ℙ²: boundary points of the Campedelli moduli, the
//! GL(3,F₂) classification of concurrency triples, and why degenerations
//! stay irreducible.

use super::{ArrangementKind, LineArrangement, PVec};
use crate::abelian_covers::{burniat, campedelli, cover_invariants, uniform, BuildingData};
use crate::error::{Error, Result};
use crate::lattice_core::{GroupElt, Rational};
use crate::local_singularities::{classify_smooth, Branch, LocalBranchConfig};
use serde::Serialize;
use std::collections::BTreeSet;

/// Which of the seven lines meet or coincide. Lines are indexed by their
/// position in `labels`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CampedelliPattern {
    pub labels: Vec<GroupElt>,
    /// Sets of at least three lines through one point.
    pub concurrent: Vec<Vec<usize>>,
    pub coincident: Vec<(usize, usize)>,
}

impl CampedelliPattern {
    /// The seven nonzero labels of Z₂³ in numeric order, general position.
    pub fn generic() -> Self {
        CampedelliPattern { labels: nonzero_labels(), concurrent: Vec::new(), coincident: Vec::new() }
    }
}

fn nonzero_labels() -> Vec<GroupElt> {
    GroupElt::all(3).into_iter().filter(|g| !g.is_zero()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpecialPoint {
    pub lines: Vec<usize>,
    pub labels: Vec<GroupElt>,
    pub case_id: String,
    pub singularity: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CampedelliBoundary {
    pub points: Vec<SpecialPoint>,
    /// Codimension in the moduli: one per concurrency triple (or per extra
    /// line through a point), two per coincident pair.
    pub codimension: usize,
    /// For a single concurrency triple, its divisor type.
    pub divisor: Option<DivisorOrbit>,
}

/// A GL(3,F₂)-orbit of concurrency triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DivisorOrbit {
    pub representative: Vec<GroupElt>,
    pub size: usize,
    pub case_id: String,
    pub singularity: String,
}

fn classify_point(labels: &[GroupElt], components: &[u32], lines: Vec<usize>) -> Result<SpecialPoint> {
    let cfg = LocalBranchConfig {
        k: 3,
        branches: labels.iter().zip(components).map(|(&label, &component)| Branch { label, component }).collect(),
    };
    let rec = classify_smooth(&cfg)?;
    Ok(SpecialPoint {
        lines,
        labels: labels.to_vec(),
        case_id: rec.case_id.clone(),
        singularity: rec.singularity_tag.clone(),
    })
}

pub fn campedelli_boundary(p: &CampedelliPattern) -> Result<CampedelliBoundary> {
    let labels = &p.labels;
    let set: BTreeSet<GroupElt> = labels.iter().copied().collect();
    if labels.len() != 7 || set.len() != 7 || labels.iter().any(|g| g.k() != 3 || g.is_zero()) {
        return Err(Error::InvalidInput("need the 7 distinct nonzero labels of Z2^3".into()));
    }
    let n = labels.len();
    let bad = |i: usize| i >= n;
    if p.concurrent.iter().flatten().any(|&i| bad(i)) || p.coincident.iter().any(|&(a, b)| bad(a) || bad(b) || a == b) {
        return Err(Error::InvalidInput("line index out of range".into()));
    }
    // Union-find on coincidences: a class of three lines is not slc.
    let mut comp: Vec<usize> = (0..n).collect();
    for &(a, b) in &p.coincident {
        let (ca, cb) = (comp[a], comp[b]);
        for c in comp.iter_mut() {
            if *c == cb {
                *c = ca;
            }
        }
    }
    for c in 0..n {
        if comp.iter().filter(|&&x| x == c).count() >= 3 {
            return Err(Error::NotSlc("three of the seven lines coincide".into()));
        }
    }
    let mut points = Vec::new();
    let mut codimension = 0;
    for s in &p.concurrent {
        let mut s = s.clone();
        s.sort_unstable();
        s.dedup();
        if s.len() < 3 {
            return Err(Error::InvalidInput("a concurrency needs at least three lines".into()));
        }
        codimension += s.len() - 2;
        let ls: Vec<GroupElt> = s.iter().map(|&i| labels[i]).collect();
        let cs: Vec<u32> = s.iter().map(|&i| comp[i] as u32).collect();
        points.push(classify_point(&ls, &cs, s)?);
    }
    let mut seen_pairs = BTreeSet::new();
    for &(a, b) in &p.coincident {
        let (a, b) = (a.min(b), a.max(b));
        if !seen_pairs.insert((a, b)) {
            continue;
        }
        codimension += 2;
        // A general point of the doubled line, then its meeting points with
        // every other line.
        points.push(classify_point(&[labels[a], labels[b]], &[0, 0], vec![a, b])?);
        for c in (0..n).filter(|&c| comp[c] != comp[a]) {
            points.push(classify_point(&[labels[a], labels[b], labels[c]], &[0, 0, 1], vec![a, b, c])?);
        }
    }
    let divisor = if p.concurrent.len() == 1 && p.concurrent[0].len() == 3 && p.coincident.is_empty() {
        let t: Vec<GroupElt> = p.concurrent[0].iter().map(|&i| labels[i]).collect();
        let key = triple_kind(&t);
        campedelli_divisor_orbits().into_iter().find(|o| triple_kind(&o.representative) == key)
    } else {
        None
    };
    Ok(CampedelliBoundary { points, codimension, divisor })
}

/// Span order of a triple: 8 when independent, 4 when it sums to zero.
fn triple_kind(t: &[GroupElt]) -> usize {
    crate::lattice_core::span_order(t)
}

fn gl3() -> Vec<[u8; 3]> {
    // Matrices as images of the basis vectors 100, 010, 001.
    let mut out = Vec::new();
    for a in 1u8..8 {
        for b in 1u8..8 {
            for c in 1u8..8 {
                let span: BTreeSet<u8> = (0u8..8)
                    .map(|m| (if m & 4 != 0 { a } else { 0 }) ^ (if m & 2 != 0 { b } else { 0 }) ^ (if m & 1 != 0 { c } else { 0 }))
                    .collect();
                if span.len() == 8 {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

fn apply(m: &[u8; 3], g: GroupElt) -> GroupElt {
    let x = g.bits();
    let bits = (if x & 4 != 0 { m[0] } else { 0 }) ^ (if x & 2 != 0 { m[1] } else { 0 }) ^ (if x & 1 != 0 { m[2] } else { 0 });
    GroupElt::new(3, bits).expect("three bits")
}

/// Orbits of the 35 label triples under GL(3,F₂), each with the case of
/// the point where the three lines meet.
pub fn campedelli_divisor_orbits() -> Vec<DivisorOrbit> {
    let group = gl3();
    debug_assert_eq!(group.len(), 168);
    let labels = nonzero_labels();
    let mut triples: BTreeSet<Vec<GroupElt>> = BTreeSet::new();
    for i in 0..7 {
        for j in i + 1..7 {
            for k in j + 1..7 {
                triples.insert(vec![labels[i], labels[j], labels[k]]);
            }
        }
    }
    let mut orbits = Vec::new();
    while let Some(first) = triples.iter().next().cloned() {
        let mut orbit: BTreeSet<Vec<GroupElt>> = BTreeSet::new();
        for m in &group {
            let mut t: Vec<GroupElt> = first.iter().map(|&g| apply(m, g)).collect();
            t.sort();
            orbit.insert(t);
        }
        for t in &orbit {
            triples.remove(t);
        }
        let p = classify_point(&first, &[0, 1, 2], vec![0, 1, 2]).expect("triples of distinct lines classify");
        orbits.push(DivisorOrbit {
            representative: first,
            size: orbit.len(),
            case_id: p.case_id,
            singularity: p.singularity,
        });
    }
    orbits
}

/// Reads the pattern off explicit rational lines labeled by their group
/// elements.
pub fn scan_campedelli(arr: &LineArrangement) -> Result<CampedelliBoundary> {
    if arr.kind != ArrangementKind::Campedelli {
        return Err(Error::InvalidArrangement("expected a campedelli arrangement".into()));
    }
    if arr.lines.len() != 7 {
        return Err(Error::InvalidArrangement(format!("{} lines; need 7", arr.lines.len())));
    }
    let mut labels = Vec::new();
    let mut lines: Vec<PVec> = Vec::new();
    for l in &arr.lines {
        let g: GroupElt = l
            .label
            .parse()
            .map_err(|_| Error::InvalidArrangement(format!("label {:?} is not an element of Z2^3", l.label)))?;
        labels.push(g);
        lines.push(super::pvec(&l.coeffs));
    }
    let mut coincident = Vec::new();
    for i in 0..7 {
        for j in i + 1..7 {
            if lines[i].same(&lines[j]) {
                coincident.push((i, j));
            }
        }
    }
    let mut concurrent: Vec<Vec<usize>> = Vec::new();
    let mut seen: BTreeSet<PVec> = BTreeSet::new();
    for i in 0..7 {
        for j in i + 1..7 {
            if lines[i].same(&lines[j]) {
                continue;
            }
            let q = lines[i].cross(&lines[j]).normalized();
            if !seen.insert(q.clone()) {
                continue;
            }
            let through: Vec<usize> = (0..7).filter(|&k| lines[k].dot(&q).is_zero()).collect();
            let distinct: BTreeSet<PVec> = through.iter().map(|&k| lines[k].normalized()).collect();
            if distinct.len() >= 3 {
                concurrent.push(through);
            }
        }
    }
    campedelli_boundary(&CampedelliPattern { labels, concurrent, coincident })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SingleComponentReport {
    pub name: String,
    /// 4(K + ½ΣD)², a positive integer for any stable limit; each component
    /// of a degeneration contributes a positive integer to it.
    pub value: Rational,
    pub single_component_forced: bool,
}

fn report(name: &str, bd: &BuildingData) -> Result<SingleComponentReport> {
    let inv = cover_invariants(bd)?;
    let value = &Rational::from_int(4) * &inv.k_plus_d_squared;
    Ok(SingleComponentReport {
        name: name.to_string(),
        single_component_forced: value == Rational::one(),
        value,
    })
}

/// Campedelli: 4(K+B)² = 1 admits no splitting into positive integers, so
/// every stable limit is irreducible. Burniat and U(2,4) for contrast.
pub fn campedelli_single_component_argument() -> Result<Vec<SingleComponentReport>> {
    Ok(vec![
        report("campedelli", &campedelli())?,
        report("burniat", &burniat())?,
        report("uniform:2,4", &uniform(2, 4)?)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GroupElt {
        s.parse().unwrap()
    }

    fn idx(p: &CampedelliPattern, s: &str) -> usize {
        p.labels.iter().position(|&x| x == g(s)).unwrap()
    }

    #[test]
    fn two_divisor_orbits() {
        let o = campedelli_divisor_orbits();
        assert_eq!(o.len(), 2);
        let mut sizes: Vec<(usize, &str)> = o.iter().map(|x| (x.size, x.case_id.as_str())).collect();
        sizes.sort();
        assert_eq!(sizes, vec![(7, "3.2"), (28, "3.1")]);
    }

    #[test]
    fn concurrency_types() {
        let mut p = CampedelliPattern::generic();
        p.concurrent = vec![vec![idx(&p, "100"), idx(&p, "010"), idx(&p, "001")]];
        let b = campedelli_boundary(&p).unwrap();
        assert_eq!(b.points[0].singularity, "A1");
        assert_eq!(b.divisor.unwrap().size, 28);
        p.concurrent = vec![vec![idx(&p, "100"), idx(&p, "010"), idx(&p, "110")]];
        let b = campedelli_boundary(&p).unwrap();
        assert_eq!(b.points[0].singularity, "1/4(1,1)");
        assert_eq!(b.codimension, 1);
    }

    #[test]
    fn coincident_pair() {
        let mut p = CampedelliPattern::generic();
        p.coincident = vec![(idx(&p, "100"), idx(&p, "011"))];
        let b = campedelli_boundary(&p).unwrap();
        let cases: BTreeSet<&str> = b.points.iter().map(|x| x.case_id.as_str()).collect();
        assert_eq!(cases, ["2′.1", "3′.1", "3′.2"].into_iter().collect());
        assert_eq!(b.codimension, 2);
    }

    #[test]
    fn three_coincident_lines_fail() {
        let mut p = CampedelliPattern::generic();
        p.coincident = vec![(0, 1), (1, 2)];
        assert!(matches!(campedelli_boundary(&p), Err(Error::NotSlc(_))));
    }

    #[test]
    fn single_component_values() {
        let r = campedelli_single_component_argument().unwrap();
        let v: Vec<(String, bool)> = r.iter().map(|x| (x.value.to_string(), x.single_component_forced)).collect();
        assert_eq!(
            v,
            vec![("1".to_string(), true), ("6".to_string(), false), ("81".to_string(), false)]
        );
    }
}
