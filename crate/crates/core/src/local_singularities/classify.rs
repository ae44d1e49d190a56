use super::fixture::{all_records, SingularityRecord, TableKind};
use crate::error::{Error, Result};
use crate::lattice_core::{reduced_basis, relations_canonical_from, GroupElt, RelationSet};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

/// One branch component through the point. Branches sharing `component`
/// are the same curve counted twice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub label: GroupElt,
    pub component: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalBranchConfig {
    pub k: u8,
    pub branches: Vec<Branch>,
}

/// A point on the double curve of a normal-crossing base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NCLocalConfig {
    pub k: u8,
    /// Label of the double curve when it is in the branch locus.
    pub double_curve_label: Option<GroupElt>,
    pub side1: Vec<Branch>,
    pub side2: Vec<Branch>,
}

/// Parses `"110:1,101:1,011:2"` (label:component). Empty input is no
/// branches.
pub fn parse_branches(s: &str) -> Result<Vec<Branch>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| {
            let (l, c) = part
                .trim()
                .split_once(':')
                .ok_or_else(|| Error::InvalidInput(format!("branch {part:?} is not label:component")))?;
            let component =
                c.trim().parse().map_err(|_| Error::InvalidInput(format!("bad component id in {part:?}")))?;
            Ok(Branch { label: l.trim().parse()?, component })
        })
        .collect()
}

impl LocalBranchConfig {
    pub fn parse(k: u8, branches: &str) -> Result<Self> {
        Ok(LocalBranchConfig { k, branches: parse_branches(branches)? })
    }
}

/// Lookup key into the tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Signature {
    pub kind: TableKind,
    pub doubles: u8,
    pub components: u8,
    pub relations: RelationSet,
}

fn check_label(l: GroupElt, k: u8) -> Result<()> {
    if l.k() != k {
        return Err(Error::InvalidInput(format!("label {l} does not have length {k}")));
    }
    if l.is_zero() {
        return Err(Error::InvalidInput("branch labels must be nonzero".into()));
    }
    Ok(())
}

/// Groups branches by component, in order of first appearance.
fn group(branches: &[Branch]) -> Vec<Vec<GroupElt>> {
    let mut order: Vec<u32> = Vec::new();
    let mut by: BTreeMap<u32, Vec<GroupElt>> = BTreeMap::new();
    for b in branches {
        if !by.contains_key(&b.component) {
            order.push(b.component);
        }
        by.entry(b.component).or_default().push(b.label);
    }
    order.into_iter().map(|c| by.remove(&c).expect("present")).collect()
}

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x.clone());
            out.push(p);
        }
    }
    out
}

pub fn signature_smooth(cfg: &LocalBranchConfig) -> Result<Signature> {
    for b in &cfg.branches {
        check_label(b.label, cfg.k)?;
    }
    let groups = group(&cfg.branches);
    if groups.iter().any(|g| g.len() >= 3) {
        return Err(Error::NotSlc("three branch components coincide".into()));
    }
    if cfg.branches.len() > 4 {
        return Err(Error::NotSlc(format!("{} components through the point; at most 4 allowed", cfg.branches.len())));
    }
    let doubles: Vec<&Vec<GroupElt>> = groups.iter().filter(|g| g.len() == 2).collect();
    let singles: Vec<GroupElt> = groups.iter().filter(|g| g.len() == 1).map(|g| g[0]).collect();
    let mut best: Option<RelationSet> = None;
    for dperm in permutations(&doubles) {
        for flips in 0..(1u32 << dperm.len()) {
            let mut head = Vec::new();
            for (i, d) in dperm.iter().enumerate() {
                if (flips >> i) & 1 == 1 {
                    head.extend([d[1], d[0]]);
                } else {
                    head.extend([d[0], d[1]]);
                }
            }
            for sperm in permutations(&singles) {
                let mut labels = head.clone();
                labels.extend(sperm);
                let r = relations_canonical_from(&labels, 1);
                if best.as_ref().map_or(true, |b| r < *b) {
                    best = Some(r);
                }
            }
        }
    }
    Ok(Signature {
        kind: TableKind::Smooth,
        doubles: doubles.len() as u8,
        components: cfg.branches.len() as u8,
        relations: best.expect("at least one ordering"),
    })
}

fn side_orders(side: &[GroupElt]) -> Vec<Vec<GroupElt>> {
    if side.len() == 2 {
        vec![side.to_vec(), vec![side[1], side[0]]]
    } else {
        vec![side.to_vec()]
    }
}

/// Applies g ↦ g + λ(g)·g₀, with λ given by the mask `mu`.
fn twist(labels: &[GroupElt], mu: u8, g0: GroupElt) -> Vec<GroupElt> {
    labels
        .iter()
        .map(|g| {
            if (g.bits() & mu).count_ones() % 2 == 1 {
                GroupElt::new(g.k(), g.bits() ^ g0.bits()).expect("same length")
            } else {
                *g
            }
        })
        .collect()
}

pub fn signature_nc(cfg: &NCLocalConfig) -> Result<Signature> {
    for b in cfg.side1.iter().chain(&cfg.side2) {
        check_label(b.label, cfg.k)?;
    }
    if let Some(g0) = cfg.double_curve_label {
        check_label(g0, cfg.k)?;
    }
    let (n1, n2) = (cfg.side1.len(), cfg.side2.len());
    if n1 != n2 {
        return Err(Error::NotSlc(format!(
            "{n1} components on the first side and {n2} on the second; K+D is not Q-Cartier"
        )));
    }
    if n1 > 2 {
        return Err(Error::NotSlc(format!("{n1} components on each side; at most 2 allowed")));
    }
    let doubled = |s: &[Branch]| s.len() == 2 && s[0].component == s[1].component;
    let (mut s1, mut s2) = (&cfg.side1, &cfg.side2);
    if doubled(s2) && !doubled(s1) {
        std::mem::swap(&mut s1, &mut s2);
    }
    let doubles = doubled(s1) as u8 + doubled(s2) as u8;
    let l1: Vec<GroupElt> = s1.iter().map(|b| b.label).collect();
    let l2: Vec<GroupElt> = s2.iter().map(|b| b.label).collect();
    let mut side_pairs = vec![(l1.clone(), l2.clone())];
    if doubles != 1 {
        side_pairs.push((l2, l1));
    }
    let mut candidates: BTreeSet<Vec<GroupElt>> = BTreeSet::new();
    for (a, b) in side_pairs {
        for a in side_orders(&a) {
            for b in side_orders(&b) {
                match cfg.double_curve_label {
                    None => {
                        let mut v = a.clone();
                        v.extend(b);
                        candidates.insert(v);
                    }
                    Some(g0) => {
                        for mu in 0..=u8::MAX >> (8 - cfg.k.max(1)) {
                            if (g0.bits() & mu).count_ones() % 2 == 1 {
                                continue;
                            }
                            let mut v = vec![g0];
                            v.extend(a.iter().copied());
                            v.extend(twist(&b, mu, g0));
                            candidates.insert(v);
                        }
                    }
                }
            }
        }
    }
    let base = if cfg.double_curve_label.is_some() { 0 } else { 1 };
    let relations = candidates
        .iter()
        .map(|v| relations_canonical_from(v, base))
        .min()
        .expect("at least one ordering");
    Ok(Signature {
        kind: if cfg.double_curve_label.is_some() { TableKind::R } else { TableKind::E },
        doubles,
        components: n1 as u8,
        relations,
    })
}

/// Labels realizing exactly the dependencies `rel` among `n` positions
/// numbered from `base`: the columns of the reduced basis of the
/// orthogonal complement, so the group they span has rank n − rank(rel).
pub fn witness_labels(n: usize, base: usize, rel: &RelationSet) -> Result<Vec<GroupElt>> {
    let masks: Vec<u32> = rel.dependency_masks().into_iter().map(|m| m >> base).collect();
    if masks.iter().any(|&m| m >> n != 0) {
        return Err(Error::InvalidInput(format!("relations {rel} mention positions beyond {n}")));
    }
    let perp = (0u32..(1 << n)).filter(|v| masks.iter().all(|m| (v & m).count_ones() % 2 == 0));
    let basis = reduced_basis(perp);
    let r = basis.len();
    let k = r.max(1) as u8;
    (0..n)
        .map(|i| {
            let mut bits = 0u8;
            for (j, b) in basis.iter().enumerate() {
                if (b >> i) & 1 == 1 {
                    bits |= 1 << (r - 1 - j);
                }
            }
            if bits == 0 {
                return Err(Error::InvalidInput(format!("relations {rel} force label {} to vanish", i + base)));
            }
            GroupElt::new(k, bits)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Witness {
    Smooth(LocalBranchConfig),
    Nc(NCLocalConfig),
}

fn side_branches(labels: &[GroupElt], doubled: bool) -> Vec<Branch> {
    labels
        .iter()
        .enumerate()
        .map(|(i, &label)| Branch { label, component: if doubled { 0 } else { i as u32 } })
        .collect()
}

pub fn smooth_witness(r: &SingularityRecord) -> Result<LocalBranchConfig> {
    let labels = witness_labels(r.label_count(), r.base_index(), &r.relations)?;
    let k = labels.first().map_or(1, |g| g.k());
    // Doubled components come first: D₁ = D₂, then D₃ = D₄.
    let branches = labels
        .iter()
        .enumerate()
        .map(|(i, &label)| {
            let component = if i < 2 * r.doubles as usize { (i / 2) as u32 } else { i as u32 };
            Branch { label, component }
        })
        .collect();
    Ok(LocalBranchConfig { k, branches })
}

pub fn nc_witness(r: &SingularityRecord) -> Result<NCLocalConfig> {
    let labels = witness_labels(r.label_count(), r.base_index(), &r.relations)?;
    let k = labels.first().map_or(1, |g| g.k());
    let (g0, rest) = match r.kind {
        TableKind::R => (Some(labels[0]), &labels[1..]),
        _ => (None, &labels[..]),
    };
    let c = r.components as usize;
    Ok(NCLocalConfig {
        k,
        double_curve_label: g0,
        side1: side_branches(&rest[..c], r.doubles >= 1),
        side2: side_branches(&rest[c..], r.doubles == 2),
    })
}

pub fn witness_for(r: &SingularityRecord) -> Result<Witness> {
    Ok(match r.kind {
        TableKind::Smooth => Witness::Smooth(smooth_witness(r)?),
        _ => Witness::Nc(nc_witness(r)?),
    })
}

pub fn signature_of_record(r: &SingularityRecord) -> Result<Signature> {
    match witness_for(r)? {
        Witness::Smooth(c) => signature_smooth(&c),
        Witness::Nc(c) => signature_nc(&c),
    }
}

/// Signature → rows. More than one row per signature would make the
/// classification ambiguous; the tests check that never happens.
pub fn signature_index() -> &'static BTreeMap<Signature, Vec<usize>> {
    static I: OnceLock<BTreeMap<Signature, Vec<usize>>> = OnceLock::new();
    I.get_or_init(|| {
        let mut m: BTreeMap<Signature, Vec<usize>> = BTreeMap::new();
        for (i, r) in all_records().iter().enumerate() {
            let s = signature_of_record(r).expect("every fixture row has a witness");
            m.entry(s).or_default().push(i);
        }
        m
    })
}

fn lookup(sig: Signature) -> Result<&'static SingularityRecord> {
    match signature_index().get(&sig) {
        Some(rows) => Ok(&all_records()[rows[0]]),
        None => Err(Error::NoMatch(format!(
            "{:?} with {} doubled and {} components, relations {}",
            sig.kind, sig.doubles, sig.components, sig.relations
        ))),
    }
}

pub fn classify_smooth(cfg: &LocalBranchConfig) -> Result<&'static SingularityRecord> {
    lookup(signature_smooth(cfg)?)
}

pub fn classify_nc(cfg: &NCLocalConfig) -> Result<&'static SingularityRecord> {
    lookup(signature_nc(cfg)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(k: u8, s: &str) -> LocalBranchConfig {
        LocalBranchConfig::parse(k, s).unwrap()
    }

    #[test]
    fn smooth_examples() {
        assert_eq!(classify_smooth(&cfg(3, "100:1,010:2,001:3")).unwrap().case_id, "3.1");
        let r = classify_smooth(&cfg(3, "100:1,010:2,110:3")).unwrap();
        assert_eq!((r.case_id.as_str(), r.singularity_tag.as_str()), ("3.2", "1/4(1,1)"));
        assert_eq!(classify_smooth(&cfg(1, "1:1")).unwrap().case_id, "1.1");
        let r = classify_smooth(&cfg(2, "10:1,10:1,01:2,01:2")).unwrap();
        assert_eq!(r.case_id, "4″.9");
        assert_eq!(r.occurrence, vec!["B"]);
    }

    #[test]
    fn smooth_gates() {
        let five = cfg(3, "100:1,010:2,001:3,110:4,011:5");
        assert!(matches!(classify_smooth(&five), Err(Error::NotSlc(_))));
        let triple = cfg(2, "10:1,01:1,11:1");
        assert!(matches!(classify_smooth(&triple), Err(Error::NotSlc(_))));
        assert!(matches!(classify_smooth(&cfg(2, "00:1")), Err(Error::InvalidInput(_))));
        // Two étale sides whose labels differ cannot glue.
        let e = NCLocalConfig {
            k: 2,
            double_curve_label: None,
            side1: parse_branches("10:1").unwrap(),
            side2: parse_branches("01:1").unwrap(),
        };
        assert!(matches!(classify_nc(&e), Err(Error::NoMatch(_))));
    }

    #[test]
    fn nc_examples() {
        let e = NCLocalConfig {
            k: 1,
            double_curve_label: None,
            side1: parse_branches("1:1").unwrap(),
            side2: parse_branches("1:1").unwrap(),
        };
        assert_eq!(classify_nc(&e).unwrap().case_id, "E1.1");
        let r = NCLocalConfig { k: 1, double_curve_label: Some("1".parse().unwrap()), side1: vec![], side2: vec![] };
        assert_eq!(classify_nc(&r).unwrap().case_id, "R0.1");
        // g₀ = 100; relations 01, 02, 034.
        let r28 = NCLocalConfig {
            k: 2,
            double_curve_label: Some("10".parse().unwrap()),
            side1: parse_branches("10:1,10:2").unwrap(),
            side2: parse_branches("01:1,11:2").unwrap(),
        };
        let rec = classify_nc(&r28).unwrap();
        assert_eq!(rec.case_id, "R2.8");
        assert_eq!(rec.gorenstein, Some(false));
    }

    #[test]
    fn twist_identifies_relation_012_with_12() {
        let g0: GroupElt = "10".parse().unwrap();
        let a = NCLocalConfig {
            k: 2,
            double_curve_label: Some(g0),
            side1: parse_branches("01:1").unwrap(),
            side2: parse_branches("11:1").unwrap(),
        };
        assert_eq!(classify_nc(&a).unwrap().case_id, "R1.1");
    }

    #[test]
    fn unequal_sides_are_not_slc() {
        let c = NCLocalConfig {
            k: 2,
            double_curve_label: None,
            side1: parse_branches("10:1").unwrap(),
            side2: vec![],
        };
        assert!(matches!(classify_nc(&c), Err(Error::NotSlc(_))));
    }

    #[test]
    fn witness_spans_expected_group() {
        let r = RelationSet::parse("12,134").unwrap();
        let w = witness_labels(4, 1, &r).unwrap();
        assert_eq!(relations_canonical_from(&w, 1).to_string(), "12,134");
        assert_eq!(w[0].k(), 2);
    }
}
