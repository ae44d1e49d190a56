//! Explicit rational line arrangements, their lc scan on Σ, degeneration
//! labels, cell metadata, tiling bookkeeping and boundary catalogs.

pub mod boundary;
pub mod campedelli;
pub mod configs;
pub mod sigma;
pub mod strata;

use crate::error::{Error, Result};
use crate::lattice_core::Rational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub use boundary::{
    burniat_boundary_catalog, check_item, triple_point_check, BoundaryItem, ItemCheck,
    BURNIAT_GENERIC, CAMPEDELLI_GENERIC,
};
pub use campedelli::{
    campedelli_boundary, campedelli_divisor_orbits, campedelli_single_component_argument,
    scan_campedelli, CampedelliPattern,
};
pub use sigma::{arrangement_lc_scan, DegenerationLabel, SigmaScan};
pub use strata::{
    cell_metadata, maximal_cell_orbits, surface_census, tiling_invariant, CellMetadata, Census,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrangementKind {
    Burniat,
    Campedelli,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementLine {
    pub label: String,
    pub coeffs: Vec<Rational>,
}

/// Labeled lines in ℙ². Burniat arrangements may pin the three blown-up
/// points explicitly (`PA`, `PB`, `PC`), which is needed once the triangle
/// sides coincide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineArrangement {
    pub kind: ArrangementKind,
    pub lines: Vec<ArrangementLine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<BTreeMap<String, Vec<Rational>>>,
}

impl LineArrangement {
    pub fn from_json(s: &str) -> Result<Self> {
        let a: LineArrangement =
            serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("arrangement: {e}")))?;
        for l in &a.lines {
            check_vector(&l.coeffs, &format!("line {}", l.label))?;
        }
        for (name, p) in a.points.iter().flatten() {
            check_vector(p, &format!("point {name}"))?;
        }
        Ok(a)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn line(&self, label: &str) -> Option<PVec> {
        self.lines.iter().find(|l| l.label == label).map(|l| pvec(&l.coeffs))
    }
}

fn check_vector(v: &[Rational], what: &str) -> Result<()> {
    if v.len() != 3 {
        return Err(Error::InvalidArrangement(format!("{what} needs 3 coordinates")));
    }
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::InvalidArrangement(format!("{what} is the zero vector")));
    }
    Ok(())
}

/// A homogeneous triple, either a line or a point of ℙ².
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PVec(pub [Rational; 3]);

pub fn pvec(v: &[Rational]) -> PVec {
    PVec([v[0].clone(), v[1].clone(), v[2].clone()])
}

impl PVec {
    pub fn from_ints(a: i64, b: i64, c: i64) -> PVec {
        PVec([Rational::from_int(a), Rational::from_int(b), Rational::from_int(c)])
    }

    pub fn cross(&self, o: &PVec) -> PVec {
        let [a, b, c] = &self.0;
        let [d, e, f] = &o.0;
        PVec([b * f - c * e, c * d - a * f, a * e - b * d])
    }

    pub fn dot(&self, o: &PVec) -> Rational {
        self.0.iter().zip(&o.0).map(|(x, y)| x * y).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    /// Same projective point (or line).
    pub fn same(&self, o: &PVec) -> bool {
        self.cross(o).is_zero()
    }

    /// Scaled so the first nonzero entry is 1.
    pub fn normalized(&self) -> PVec {
        let lead = self.0.iter().find(|x| !x.is_zero()).expect("nonzero vector").clone();
        PVec(std::array::from_fn(|i| &self.0[i] / &lead))
    }

    pub fn to_vec(&self) -> Vec<Rational> {
        self.0.to_vec()
    }
}

impl fmt::Display for PVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normalized();
        write!(f, "({}:{}:{})", n.0[0], n.0[1], n.0[2])
    }
}
