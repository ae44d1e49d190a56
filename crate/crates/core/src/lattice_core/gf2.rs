//! Vectors over the two-element field and canonical dependency sets.

use crate::error::{Error, Result};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// An element of Z₂ᵏ, `k ≤ 8`. Printed as a bit string whose first
/// character is the most significant bit, so "110" has value 6.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElt {
    k: u8,
    bits: u8,
}

/// A character of Z₂ᵏ, identified with a bit vector through the dot pairing.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    k: u8,
    bits: u8,
}

macro_rules! bitvec_common {
    ($t:ident) => {
        impl $t {
            pub fn new(k: u8, bits: u8) -> Result<Self> {
                if k > 8 {
                    return Err(Error::InvalidInput(format!("rank {k} exceeds 8")));
                }
                if k < 8 && (bits as u16) >> k != 0 {
                    return Err(Error::InvalidInput(format!("value {bits} does not fit rank {k}")));
                }
                Ok($t { k, bits })
            }

            pub fn zero(k: u8) -> Self {
                $t { k, bits: 0 }
            }

            pub fn k(&self) -> u8 {
                self.k
            }

            pub fn bits(&self) -> u8 {
                self.bits
            }

            pub fn is_zero(&self) -> bool {
                self.bits == 0
            }

            /// All `2^k` elements in numeric order.
            pub fn all(k: u8) -> Vec<Self> {
                (0..(1u16 << k)).map(|b| $t { k, bits: b as u8 }).collect()
            }

            pub fn parse(s: &str) -> Result<Self> {
                s.parse()
            }
        }

        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                debug_assert_eq!(self.k, o.k);
                $t { k: self.k, bits: self.bits ^ o.bits }
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for i in (0..self.k).rev() {
                    write!(f, "{}", (self.bits >> i) & 1)?;
                }
                Ok(())
            }
        }

        impl fmt::Debug for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(self, f)
            }
        }

        impl FromStr for $t {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                let s = s.trim();
                if s.is_empty() || s.len() > 8 || !s.chars().all(|c| c == '0' || c == '1') {
                    return Err(Error::InvalidInput(format!("bad bit string {s:?}")));
                }
                let bits = u8::from_str_radix(s, 2).expect("validated");
                Ok($t { k: s.len() as u8, bits })
            }
        }

        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(&self.to_string())
            }
        }

        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(de::Error::custom)
            }
        }
    };
}

bitvec_common!(GroupElt);
bitvec_common!(Character);

impl Character {
    /// `true` when the character takes the value −1 on `h`.
    pub fn is_odd_on(&self, h: GroupElt) -> bool {
        (self.bits & h.bits).count_ones() % 2 == 1
    }

    /// The value `χ(h) ∈ {1, −1}`.
    pub fn eval(&self, h: GroupElt) -> i8 {
        if self.is_odd_on(h) {
            -1
        } else {
            1
        }
    }
}

fn check_lengths(elements: &[GroupElt]) -> Result<Option<u8>> {
    let k = elements.first().map(|g| g.k);
    if let Some(k) = k {
        if elements.iter().any(|g| g.k != k) {
            return Err(Error::InvalidInput("mixed label lengths".into()));
        }
    }
    Ok(k)
}

/// Row-reduced basis (as raw bit masks) of the span of `vs`.
pub(crate) fn reduced_basis(vs: impl IntoIterator<Item = u32>) -> Vec<u32> {
    let mut basis: Vec<u32> = Vec::new();
    for mut v in vs {
        for b in &basis {
            let top = 31 - b.leading_zeros();
            if (v >> top) & 1 == 1 {
                v ^= b;
            }
        }
        if v != 0 {
            let top = 31 - v.leading_zeros();
            for b in basis.iter_mut() {
                if (*b >> top) & 1 == 1 {
                    *b ^= v;
                }
            }
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

pub(crate) fn rank_f2(vs: impl IntoIterator<Item = u32>) -> usize {
    reduced_basis(vs).len()
}

/// Every element of the subgroup spanned by `elements`, in numeric order.
/// An empty input spans `{0}`; its rank is taken from `k` when known.
pub fn span_f2(elements: &[GroupElt]) -> Result<Vec<GroupElt>> {
    let k = check_lengths(elements)?.unwrap_or(0);
    let basis = reduced_basis(elements.iter().map(|g| g.bits as u32));
    let mut out: Vec<u8> = vec![0];
    for b in basis {
        let extra: Vec<u8> = out.iter().map(|x| x ^ b as u8).collect();
        out.extend(extra);
    }
    out.sort_unstable();
    Ok(out.into_iter().map(|bits| GroupElt { k, bits }).collect())
}

/// Size of the span, without materializing it.
pub fn span_order(elements: &[GroupElt]) -> usize {
    1usize << rank_f2(elements.iter().map(|g| g.bits as u32))
}

/// Canonical generating set of the linear dependencies among a list of
/// labels. Each relation is the sorted list of positions whose labels sum to
/// zero; positions are numbered from `base`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RelationSet {
    pub relations: Vec<Vec<usize>>,
}

impl RelationSet {
    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    /// Parses the printed form, e.g. `"12,134"` or `"none"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "none" {
            return Ok(Self::default());
        }
        let mut relations = Vec::new();
        for part in s.split(',') {
            let mut r: Vec<usize> = Vec::new();
            for c in part.trim().chars() {
                let d = c
                    .to_digit(10)
                    .ok_or_else(|| Error::InvalidInput(format!("bad relation {part:?}")))?;
                r.push(d as usize);
            }
            r.sort_unstable();
            relations.push(r);
        }
        relations.sort_by(|a, b| shortlex(a, b));
        Ok(Self { relations })
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.relations
            .iter()
            .map(|r| r.iter().map(|i| i.to_string()).collect())
            .collect()
    }

    /// Each relation as a bit mask over absolute positions.
    pub fn dependency_masks(&self) -> Vec<u32> {
        self.relations
            .iter()
            .map(|r| r.iter().fold(0u32, |m, &i| m | (1 << i)))
            .collect()
    }
}

impl fmt::Display for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.relations.is_empty() {
            write!(f, "none")
        } else {
            write!(f, "{}", self.to_strings().join(","))
        }
    }
}

impl Serialize for RelationSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RelationSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        RelationSet::parse(&s).map_err(de::Error::custom)
    }
}

impl fmt::Debug for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

fn shortlex(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn mask_indices(m: u32) -> Vec<usize> {
    (0..32).filter(|i| (m >> i) & 1 == 1).collect()
}

/// Canonical basis of a dependency space given by generating masks over
/// positions: greedy selection of independent vectors in order of
/// (weight, lexicographic index sequence).
pub(crate) fn canonical_from_masks(gens: &[u32]) -> RelationSet {
    let basis = reduced_basis(gens.iter().copied());
    let dim = basis.len();
    let mut all: Vec<u32> = Vec::with_capacity(1 << dim);
    all.push(0);
    for b in &basis {
        let extra: Vec<u32> = all.iter().map(|x| x ^ b).collect();
        all.extend(extra);
    }
    let mut vecs: Vec<Vec<usize>> = all.into_iter().filter(|&m| m != 0).map(mask_indices).collect();
    vecs.sort_by(|a, b| shortlex(a, b));
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    let mut chosen_masks: Vec<u32> = Vec::new();
    for v in vecs {
        if chosen.len() == dim {
            break;
        }
        let m = v.iter().fold(0u32, |m, &i| m | (1 << i));
        let mut trial = chosen_masks.clone();
        trial.push(m);
        if rank_f2(trial.iter().copied()) == trial.len() {
            chosen_masks.push(m);
            chosen.push(v);
        }
    }
    RelationSet { relations: chosen }
}

/// Dependency masks of `labels`, positions numbered from `base`.
pub(crate) fn dependency_generators(labels: &[GroupElt], base: usize) -> Vec<u32> {
    let n = labels.len();
    // Kernel of the k×n matrix: augment each label with its position bit and
    // row-reduce on the label part.
    let aug: Vec<u64> = labels
        .iter()
        .enumerate()
        .map(|(i, g)| ((g.bits as u64) << 32) | (1u64 << (i + base)))
        .collect();
    let mut rows: Vec<u64> = Vec::new();
    let mut kernel = Vec::new();
    for mut v in aug {
        for r in &rows {
            let top = 63 - r.leading_zeros();
            if (v >> top) & 1 == 1 {
                v ^= r;
            }
        }
        if v >> 32 == 0 {
            kernel.push(v as u32);
        } else {
            rows.push(v);
        }
    }
    debug_assert!(n < 32);
    kernel
}

/// Canonical dependency set of `labels`, positions numbered from 1.
pub fn relations_canonical(labels: &[GroupElt]) -> RelationSet {
    relations_canonical_from(labels, 1)
}

/// Canonical dependency set with positions numbered from `base` (use 0 when
/// the first label is the double-curve label g₀).
pub fn relations_canonical_from(labels: &[GroupElt], base: usize) -> RelationSet {
    canonical_from_masks(&dependency_generators(labels, base))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GroupElt {
        s.parse().unwrap()
    }

    #[test]
    fn span_examples() {
        assert_eq!(span_f2(&[g("100"), g("010"), g("001")]).unwrap().len(), 8);
        assert_eq!(span_f2(&[g("100"), g("011"), g("111")]).unwrap().len(), 4);
        assert_eq!(span_f2(&[]).unwrap().len(), 1);
        assert!(span_f2(&[g("10"), g("100")]).is_err());
    }

    #[test]
    fn relation_examples() {
        assert!(relations_canonical(&[g("100"), g("010"), g("001")]).is_empty());
        assert_eq!(relations_canonical(&[g("100"), g("010"), g("110")]).to_string(), "123");
        assert_eq!(
            relations_canonical(&[g("110"), g("110"), g("011"), g("101")]).to_string(),
            "12,134"
        );
    }

    #[test]
    fn printed_basis_canonicalizes() {
        let r = RelationSet::parse("012,013,14").unwrap();
        let c = canonical_from_masks(&r.dependency_masks());
        assert_eq!(c.to_string(), "14,23,012");
    }

    #[test]
    fn bit_string_order() {
        assert_eq!(g("110").bits(), 6);
        assert_eq!(g("110").to_string(), "110");
        let c: Character = "011".parse().unwrap();
        assert!(c.is_odd_on(g("010")));
        assert!(!c.is_odd_on(g("011")));
    }
}
