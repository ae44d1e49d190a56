//! Building data of Z₂ᵏ covers: eigensheaves, the fundamental relations,
//! numerical invariants, standardness, and label bookkeeping.

use crate::error::{Error, Result};
use crate::lattice_core::{
    intersect_classes, riemann_roch_chi, sigma_label_class, span_order, BaseSurface, Character,
    DivisorClass, GroupElt, Rational, SurfaceKind,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One branch component: label, class, multiplicity, and an optional
/// identifier of the underlying irreducible curve. Entries sharing an id are
/// the same curve appearing in several `D_h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchEntry {
    pub label: GroupElt,
    pub class: DivisorClass,
    #[serde(default = "one")]
    pub mult: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<String>,
}

fn one() -> u8 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigensheafEntry {
    pub character: Character,
    pub class: DivisorClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildingData {
    pub base: BaseSurface,
    pub k: u8,
    pub branch: Vec<BranchEntry>,
    /// Explicit `L_χ`, when the datum carries them; otherwise they are solved
    /// from the branch divisors.
    pub eigensheaves: Option<BTreeMap<Character, DivisorClass>>,
}

#[derive(Serialize, Deserialize)]
struct BuildingDataFile {
    base: String,
    k: u8,
    branch: Vec<BranchEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eigensheaves: Option<Vec<EigensheafEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CoverInvariants {
    pub kx_squared: Rational,
    pub chi_structure_sheaf: Rational,
    pub degree: u64,
    /// (K_Y + ½ΣD_h)² on the base.
    pub k_plus_d_squared: Rational,
    /// K_X² recomputed from the eigensheaves through ½ΣD_h = 2^(1−k)·Σ_χ L_χ.
    pub kx_squared_from_eigensheaves: Rational,
}

impl BuildingData {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: BuildingDataFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        let base = BaseSurface::preset(raw.base.parse()?);
        let bd = BuildingData {
            base,
            k: raw.k,
            branch: raw.branch,
            eigensheaves: raw
                .eigensheaves
                .map(|v| v.into_iter().map(|e| (e.character, e.class)).collect()),
        };
        bd.validate()?;
        Ok(bd)
    }

    pub fn to_json(&self) -> String {
        let raw = BuildingDataFile {
            base: self.base.name.tag().to_string(),
            k: self.k,
            branch: self.branch.clone(),
            eigensheaves: self.eigensheaves.as_ref().map(|m| {
                m.iter()
                    .map(|(c, l)| EigensheafEntry { character: *c, class: l.clone() })
                    .collect()
            }),
        };
        serde_json::to_string_pretty(&raw).expect("serializable")
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k > 8 {
            return Err(Error::InvalidInput(format!("group rank {} out of range", self.k)));
        }
        for e in &self.branch {
            if e.label.k() != self.k {
                return Err(Error::InvalidInput(format!("label {} has wrong length", e.label)));
            }
            if e.label.is_zero() {
                return Err(Error::InvalidInput("zero branch label".into()));
            }
            if e.class.len() != self.base.pic_rank {
                return Err(Error::InvalidInput(format!("class of {} has wrong rank", e.label)));
            }
        }
        if let Some(m) = &self.eigensheaves {
            for (c, l) in m {
                if c.k() != self.k || l.len() != self.base.pic_rank {
                    return Err(Error::InvalidInput(format!("eigensheaf {c} malformed")));
                }
            }
        }
        Ok(())
    }

    /// D_h = Σ mult·class over the entries labelled `h`.
    pub fn branch_divisor(&self, h: GroupElt) -> DivisorClass {
        let mut d = vec![0i64; self.base.pic_rank];
        for e in self.branch.iter().filter(|e| e.label == h) {
            for (x, c) in d.iter_mut().zip(&e.class) {
                *x += e.mult as i64 * c;
            }
        }
        d
    }

    /// Σ_h D_h counted with multiplicity.
    pub fn total_branch(&self) -> DivisorClass {
        let mut d = vec![0i64; self.base.pic_rank];
        for e in &self.branch {
            for (x, c) in d.iter_mut().zip(&e.class) {
                *x += e.mult as i64 * c;
            }
        }
        d
    }

    fn effective_eigensheaves(&self) -> Result<BTreeMap<Character, DivisorClass>> {
        match &self.eigensheaves {
            Some(m) => {
                let mut m = m.clone();
                for c in Character::all(self.k) {
                    m.entry(c).or_insert_with(|| vec![0; self.base.pic_rank]);
                }
                Ok(m)
            }
            None => solve_eigensheaves(self),
        }
    }
}

/// ε^{χ,χ′}_h: 1 iff both characters are odd on `h`.
pub fn epsilon_indicator(chi: Character, chi2: Character, h: GroupElt) -> u8 {
    (chi.is_odd_on(h) && chi2.is_odd_on(h)) as u8
}

/// L_χ = ½·Σ_{χ(h)=−1} mult·D_h for every character.
pub fn solve_eigensheaves(bd: &BuildingData) -> Result<BTreeMap<Character, DivisorClass>> {
    bd.validate()?;
    let mut out = BTreeMap::new();
    for chi in Character::all(bd.k) {
        let mut sum = vec![0i64; bd.base.pic_rank];
        for e in bd.branch.iter().filter(|e| chi.is_odd_on(e.label)) {
            for (x, c) in sum.iter_mut().zip(&e.class) {
                *x += e.mult as i64 * c;
            }
        }
        if sum.iter().any(|x| x % 2 != 0) {
            return Err(Error::NotDivisible(chi.to_string()));
        }
        out.insert(chi, sum.into_iter().map(|x| x / 2).collect());
    }
    Ok(out)
}

/// Outcome of checking the fundamental relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub holds: bool,
    pub first_violation: Option<(Character, Character)>,
}

/// L_χ + L_χ′ = L_{χ+χ′} + Σ_h ε·mult·D_h for all pairs of characters.
pub fn verify_fundamental_relations(bd: &BuildingData) -> Result<RelationCheck> {
    let l = bd.effective_eigensheaves()?;
    let chars = Character::all(bd.k);
    for &c1 in &chars {
        for &c2 in &chars {
            let mut lhs: Vec<i64> = l[&c1].iter().zip(&l[&c2]).map(|(a, b)| a + b).collect();
            for (x, y) in lhs.iter_mut().zip(&l[&(c1 + c2)]) {
                *x -= y;
            }
            for e in &bd.branch {
                if epsilon_indicator(c1, c2, e.label) == 1 {
                    for (x, c) in lhs.iter_mut().zip(&e.class) {
                        *x -= e.mult as i64 * c;
                    }
                }
            }
            if lhs.iter().any(|&x| x != 0) {
                return Ok(RelationCheck { holds: false, first_violation: Some((c1, c2)) });
            }
        }
    }
    Ok(RelationCheck { holds: true, first_violation: None })
}

fn to_q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_int(x)).collect()
}

/// K², χ(𝒪) and degree of the cover.
pub fn cover_invariants(bd: &BuildingData) -> Result<CoverInvariants> {
    let l = bd.effective_eigensheaves()?;
    let s = &bd.base;
    let degree = 1u64 << bd.k;
    let half = Rational::half();
    let kd: Vec<Rational> = to_q(&s.canonical_class)
        .into_iter()
        .zip(to_q(&bd.total_branch()))
        .map(|(k, d)| k + &half * &d)
        .collect();
    let k_plus_d_squared = s.intersect_rational(&kd, &kd)?;
    let kx_squared = &k_plus_d_squared * &Rational::from_int(degree as i64);

    let mut sum_l = vec![0i64; s.pic_rank];
    for v in l.values() {
        for (x, y) in sum_l.iter_mut().zip(v) {
            *x += y;
        }
    }
    let scale = Rational::new(2, degree as i64);
    let kd2: Vec<Rational> = to_q(&s.canonical_class)
        .into_iter()
        .zip(to_q(&sum_l))
        .map(|(k, x)| k + &scale * &x)
        .collect();
    let kx_squared_from_eigensheaves =
        &s.intersect_rational(&kd2, &kd2)? * &Rational::from_int(degree as i64);

    let mut chi = Rational::zero();
    for v in l.values() {
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        chi += riemann_roch_chi(&neg, s)?;
    }
    Ok(CoverInvariants {
        kx_squared,
        chi_structure_sheaf: chi,
        degree,
        k_plus_d_squared,
        kx_squared_from_eigensheaves,
    })
}

/// Every irreducible branch component carries total multiplicity ≤ 2.
pub fn standardness_check(bd: &BuildingData) -> bool {
    let mut totals: BTreeMap<String, u32> = BTreeMap::new();
    for (i, e) in bd.branch.iter().enumerate() {
        let key = e.component.clone().unwrap_or_else(|| format!("#{i}"));
        *totals.entry(key).or_default() += e.mult as u32;
    }
    totals.values().all(|&m| m <= 2)
}

/// Label of the exceptional divisor after blowing up a point where the given
/// branch labels meet.
pub fn blowup_branch_label(labels_through_center: &[GroupElt]) -> Result<GroupElt> {
    let first = labels_through_center
        .first()
        .ok_or_else(|| Error::InvalidInput("empty label list".into()))?;
    let mut acc = GroupElt::zero(first.k());
    for g in labels_through_center {
        if g.k() != first.k() {
            return Err(Error::InvalidInput("mixed label lengths".into()));
        }
        acc = acc + *g;
    }
    Ok(acc)
}

/// Identification of branch labels along double components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoincidencePattern {
    pub pairs: Vec<(GroupElt, GroupElt)>,
    pub singles: Vec<GroupElt>,
}

impl CoincidencePattern {
    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for g in self.pairs.iter().flat_map(|(a, b)| [*a, *b]).chain(self.singles.iter().copied()) {
            if g.is_zero() {
                return Err(Error::InvalidInput("zero label".into()));
            }
            if !seen.insert(g) {
                return Err(Error::InvalidInput(format!("label {g} used twice")));
            }
        }
        Ok(())
    }

    pub fn effective_labels(&self) -> Vec<GroupElt> {
        self.pairs.iter().map(|(a, b)| *a + *b).chain(self.singles.iter().copied()).collect()
    }
}

/// Number of connected components of the cover: 2ᵏ over the order of the
/// subgroup generated by the effective labels.
pub fn component_count(pattern: &CoincidencePattern, k: u8) -> Result<u64> {
    pattern.validate()?;
    if pattern.effective_labels().iter().any(|g| g.k() != k) {
        return Err(Error::InvalidInput("label length differs from k".into()));
    }
    Ok((1u64 << k) / span_order(&pattern.effective_labels()) as u64)
}

/// All coincidence patterns of the nonzero labels of Z₂ᵏ: every set of
/// disjoint pairs, the rest single.
pub fn all_pairings(k: u8) -> Vec<CoincidencePattern> {
    let labels: Vec<GroupElt> = GroupElt::all(k).into_iter().filter(|g| !g.is_zero()).collect();
    let mut out = Vec::new();
    fn rec(
        rest: &[GroupElt],
        pairs: &mut Vec<(GroupElt, GroupElt)>,
        singles: &mut Vec<GroupElt>,
        out: &mut Vec<CoincidencePattern>,
    ) {
        let Some((&first, tail)) = rest.split_first() else {
            out.push(CoincidencePattern { pairs: pairs.clone(), singles: singles.clone() });
            return;
        };
        singles.push(first);
        rec(tail, pairs, singles, out);
        singles.pop();
        for i in 0..tail.len() {
            let partner = tail[i];
            let remaining: Vec<GroupElt> =
                tail.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| *g).collect();
            pairs.push((first, partner));
            rec(&remaining, pairs, singles, out);
            pairs.pop();
        }
    }
    rec(&labels, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

fn lines_on_p2(k: u8, class_of_each: i64) -> Vec<BranchEntry> {
    GroupElt::all(k)
        .into_iter()
        .filter(|g| !g.is_zero())
        .enumerate()
        .map(|(i, g)| BranchEntry {
            label: g,
            class: vec![class_of_each],
            mult: 1,
            component: Some(format!("L{}", i + 1)),
        })
        .collect()
}

/// Z₂³ cover of ℙ² branched over seven lines, one per nonzero label.
pub fn campedelli() -> BuildingData {
    BuildingData { base: BaseSurface::p2(), k: 3, branch: lines_on_p2(3, 1), eigensheaves: None }
}

/// Z₂ᵏ cover of ℙᵐ branched over 2ᵏ − 1 hyperplanes; only `m = 2` has a
/// Picard preset here.
pub fn uniform(m: u32, k: u8) -> Result<BuildingData> {
    if m != 2 {
        return Err(Error::Unsupported(format!("uniform cover of P^{m}: only m = 2 is supported")));
    }
    if k == 0 || k > 8 {
        return Err(Error::InvalidInput(format!("group rank {k} out of range")));
    }
    Ok(BuildingData { base: BaseSurface::p2(), k, branch: lines_on_p2(k, 1), eigensheaves: None })
}

/// Z₂² cover of Σ: the A-curves carry label 10, the B-curves 01, the C-curves 11.
pub fn burniat() -> BuildingData {
    let mut branch = Vec::new();
    for (fam, label) in [("A", "10"), ("B", "01"), ("C", "11")] {
        for i in 0..4 {
            let name = format!("{fam}{i}");
            branch.push(BranchEntry {
                label: label.parse().expect("static"),
                class: sigma_label_class(&name).expect("static"),
                mult: 1,
                component: Some(name),
            });
        }
    }
    BuildingData {
        base: BaseSurface::preset(SurfaceKind::Sigma),
        k: 2,
        branch,
        eigensheaves: None,
    }
}

/// Self-intersection helper for reports.
pub fn class_square(d: &[i64], s: &BaseSurface) -> Result<i64> {
    intersect_classes(d, d, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GroupElt {
        s.parse().unwrap()
    }
    fn c(s: &str) -> Character {
        s.parse().unwrap()
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon_indicator(c("111"), c("111"), g("100")), 1);
        assert_eq!(epsilon_indicator(c("000"), c("101"), g("111")), 0);
        assert_eq!(epsilon_indicator(c("110"), c("011"), g("010")), 1);
    }

    #[test]
    fn campedelli_eigensheaves() {
        let l = solve_eigensheaves(&campedelli()).unwrap();
        for (chi, v) in l {
            assert_eq!(v, if chi.is_zero() { vec![0] } else { vec![2] });
        }
    }

    #[test]
    fn burniat_eigensheaf_trivial_on_a() {
        let l = solve_eigensheaves(&burniat()).unwrap();
        // χ with χ(10) = 1 is the bit vector 01.
        assert_eq!(l[&c("01")], vec![3, -2, 0, -1]);
    }

    #[test]
    fn single_line_not_divisible() {
        let bd = BuildingData {
            base: BaseSurface::p2(),
            k: 1,
            branch: vec![BranchEntry { label: g("1"), class: vec![1], mult: 1, component: None }],
            eigensheaves: None,
        };
        assert_eq!(solve_eigensheaves(&bd), Err(Error::NotDivisible("1".into())));
    }

    #[test]
    fn corrupted_datum_breaks_relations() {
        let mut bd = campedelli();
        bd.eigensheaves = Some(solve_eigensheaves(&bd).unwrap());
        assert!(verify_fundamental_relations(&bd).unwrap().holds);
        bd.branch[0].class = vec![2];
        let r = verify_fundamental_relations(&bd).unwrap();
        assert!(!r.holds);
        assert!(r.first_violation.is_some());
    }

    #[test]
    fn standardness_examples() {
        let mut bd = campedelli();
        assert!(standardness_check(&bd));
        bd.branch[1].component = bd.branch[0].component.clone();
        assert!(standardness_check(&bd));
        bd.branch[0].mult = 2;
        assert!(!standardness_check(&bd));
    }

    #[test]
    fn blowup_labels() {
        assert_eq!(blowup_branch_label(&[g("100"), g("010")]).unwrap(), g("110"));
        assert!(blowup_branch_label(&[g("101"), g("101")]).unwrap().is_zero());
        assert!(blowup_branch_label(&[]).is_err());
    }

    #[test]
    fn pairing_census_size() {
        // 1 + C(7,2) + 7·5·3 + 105 patterns with 0, 1, 2, 3 pairs.
        assert_eq!(all_pairings(3).len(), 232);
    }

    #[test]
    fn json_roundtrip() {
        let bd = burniat();
        let back = BuildingData::from_json(&bd.to_json()).unwrap();
        assert_eq!(back, bd);
    }
}
