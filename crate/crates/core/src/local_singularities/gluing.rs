//! Whether two covers of the sides of a normal-crossing surface glue along
//! the double curve.

use crate::lattice_core::{span_f2, GroupElt};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// The cover restricted to one component of the double curve: the inertia
/// subgroup (by generators) and the labels of the branch points of the
/// normalized restricted cover, keyed by a point name on that component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CurveCoverData {
    pub inertia: Vec<GroupElt>,
    pub branch_labels: BTreeMap<String, GroupElt>,
}

fn subgroup(gens: &[GroupElt]) -> Option<BTreeSet<GroupElt>> {
    let mut s: BTreeSet<GroupElt> = span_f2(gens).ok()?.into_iter().collect();
    // The empty span has no length; drop its placeholder zero so trivial
    // subgroups of any rank compare equal.
    s.retain(|g| !g.is_zero());
    Some(s)
}

/// `involution[i] = j` pairs component i of the first side with component
/// j of the second. The covers glue iff every pair has the same inertia
/// subgroup and the same branch-point labels. A pairing that is not a
/// bijection never glues.
pub fn gluing_compatible(
    side1: &[CurveCoverData],
    side2: &[CurveCoverData],
    involution: &[usize],
) -> bool {
    if side1.len() != side2.len() || involution.len() != side1.len() {
        return false;
    }
    let targets: BTreeSet<usize> = involution.iter().copied().collect();
    if targets.len() != involution.len() || targets.iter().any(|&j| j >= side2.len()) {
        return false;
    }
    side1.iter().zip(involution).all(|(a, &j)| {
        let b = &side2[j];
        match (subgroup(&a.inertia), subgroup(&b.inertia)) {
            (Some(x), Some(y)) => x == y && a.branch_labels == b.branch_labels,
            _ => false,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(inertia: &[&str], pts: &[(&str, &str)]) -> CurveCoverData {
        CurveCoverData {
            inertia: inertia.iter().map(|s| s.parse().unwrap()).collect(),
            branch_labels: pts.iter().map(|(p, l)| (p.to_string(), l.parse().unwrap())).collect(),
        }
    }

    #[test]
    fn identical_sides_glue() {
        let a = data(&["01"], &[("0", "10"), ("inf", "10")]);
        assert!(gluing_compatible(&[a.clone()], &[a], &[0]));
    }

    #[test]
    fn inertia_must_agree() {
        let a = data(&["01"], &[]);
        let b = data(&[], &[]);
        assert!(!gluing_compatible(&[a], &[b], &[0]));
    }

    #[test]
    fn branch_labels_must_agree() {
        let a = data(&["01"], &[("0", "10"), ("inf", "10")]);
        let b = data(&["01"], &[("0", "10"), ("inf", "11")]);
        assert!(!gluing_compatible(&[a], &[b], &[0]));
    }

    #[test]
    fn pairing_follows_involution() {
        let a = data(&["01"], &[]);
        let b = data(&["10"], &[]);
        assert!(gluing_compatible(&[a.clone(), b.clone()], &[b.clone(), a.clone()], &[1, 0]));
        assert!(!gluing_compatible(&[a.clone(), b.clone()], &[b, a], &[0, 1]));
    }
}
