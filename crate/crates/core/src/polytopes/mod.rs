//! Exact polyhedral engine: the Burniat polytope, flat-constraint cells,
//! dimensions by exact linear programming, symmetry, and tilings.

pub mod burniat;
pub mod cells;
pub mod lp;
pub mod tiling;

use crate::error::{Error, Result};
use crate::lattice_core::Rational;
use lp::{Cmp, Lp, LpOutcome};
use serde::{Deserialize, Serialize};

pub use burniat::{
    canonical, coord_index, coord_label, delta_bur, flat_inequality, parse_inequality,
    symmetry_group, CanonicalHalfspace, Canonical, Perm, SymmetryGroup, COORDS,
};
pub use cells::{enumerate_maximal_cells, Cell, CellOrbit};
pub use tiling::{enumerate_tilings, facet_match, verify_tiling, Tiling, TilingReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Le,
    Ge,
}

/// `coeffs·x (≤|≥) bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Halfspace {
    pub coeffs: Vec<Rational>,
    pub bound: Rational,
    pub sense: Sense,
}

impl Halfspace {
    pub fn le(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Halfspace { coeffs, bound, sense: Sense::Le }
    }

    /// The same constraint written with `≤`.
    pub fn as_le(&self) -> (Vec<Rational>, Rational) {
        match self.sense {
            Sense::Le => (self.coeffs.clone(), self.bound.clone()),
            Sense::Ge => (self.coeffs.iter().map(|c| -c).collect(), -&self.bound),
        }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        let v = self.eval(x);
        match self.sense {
            Sense::Le => v <= self.bound,
            Sense::Ge => v >= self.bound,
        }
    }

    pub fn strictly_contains(&self, x: &[Rational]) -> bool {
        let v = self.eval(x);
        match self.sense {
            Sense::Le => v < self.bound,
            Sense::Ge => v > self.bound,
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.coeffs.len() != n {
            return Err(Error::InvalidInput(format!("halfspace needs {n} coefficients")));
        }
        if self.coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidInput("halfspace with zero coefficients".into()));
        }
        Ok(())
    }
}

/// An affine equation `coeffs·x = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equation {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polytope {
    pub n: usize,
    pub equalities: Vec<Equation>,
    pub inequalities: Vec<Halfspace>,
}

impl Polytope {
    pub fn new(n: usize) -> Self {
        Polytope { n, equalities: Vec::new(), inequalities: Vec::new() }
    }

    pub fn with(&self, extra: impl IntoIterator<Item = Halfspace>) -> Self {
        let mut p = self.clone();
        p.inequalities.extend(extra);
        p
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.equalities
            .iter()
            .all(|e| e.coeffs.iter().zip(x).map(|(a, b)| a * b).sum::<Rational>() == e.rhs)
            && self.inequalities.iter().all(|h| h.contains(x))
    }

    /// Variables carrying an explicit `x_j ≥ 0` constraint; the LP may treat
    /// them as sign-restricted, which keeps the tableau small.
    fn nonneg_flags(&self) -> Vec<bool> {
        let mut flags = vec![false; self.n];
        for h in &self.inequalities {
            let (c, b) = h.as_le();
            if !b.is_zero() {
                continue;
            }
            let nz: Vec<usize> = (0..self.n).filter(|&j| !c[j].is_zero()).collect();
            if nz.len() == 1 && c[nz[0]].is_negative() {
                flags[nz[0]] = true;
            }
        }
        flags
    }

    fn base_lp(&self) -> Lp {
        let mut lp = Lp::new(self.n);
        lp.nonneg = self.nonneg_flags();
        for e in &self.equalities {
            lp.push(e.coeffs.clone(), Cmp::Eq, e.rhs.clone());
        }
        lp
    }

    /// `max obj·x` over the polytope.
    pub fn maximize(&self, obj: &[Rational]) -> LpOutcome {
        let mut lp = self.base_lp();
        lp.obj = obj.to_vec();
        for h in &self.inequalities {
            let (c, b) = h.as_le();
            lp.push(c, Cmp::Le, b);
        }
        lp.solve()
    }

    /// Largest uniform slack `t ∈ [0, 1]` over the non-`implicit` inequalities,
    /// with the `implicit` ones imposed as equalities.
    fn slack_lp(&self, implicit: &[bool]) -> LpOutcome {
        let mut lp = Lp::new(self.n + 1);
        let mut flags = self.nonneg_flags();
        flags.push(true);
        lp.nonneg = flags;
        let ext = |c: &[Rational], t: i64| {
            let mut v = c.to_vec();
            v.push(Rational::from_int(t));
            v
        };
        for e in &self.equalities {
            lp.push(ext(&e.coeffs, 0), Cmp::Eq, e.rhs.clone());
        }
        for (h, &imp) in self.inequalities.iter().zip(implicit) {
            let (c, b) = h.as_le();
            if imp {
                lp.push(ext(&c, 0), Cmp::Eq, b);
            } else {
                lp.push(ext(&c, 1), Cmp::Le, b);
            }
        }
        let mut cap = vec![Rational::zero(); self.n];
        cap.push(Rational::one());
        lp.push(cap.clone(), Cmp::Le, Rational::one());
        lp.obj = cap;
        lp.solve()
    }

    /// Largest `t ≤ 1` such that every inequality holds with slack `t`;
    /// positive exactly when the polytope is full-dimensional within its
    /// equality hull. `None` when empty.
    pub fn max_uniform_slack(&self) -> Option<Rational> {
        match self.slack_lp(&vec![false; self.inequalities.len()]) {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    /// Flags of the inequalities that hold with equality on the whole
    /// polytope, or `None` when it is empty.
    pub fn implicit_equalities(&self) -> Option<Vec<bool>> {
        let none = vec![false; self.inequalities.len()];
        match self.slack_lp(&none) {
            LpOutcome::Infeasible => return None,
            LpOutcome::Optimal { value, .. } if value.is_positive() => return Some(none),
            _ => {}
        }
        let mut flags = none;
        for (i, h) in self.inequalities.iter().enumerate() {
            let (c, b) = h.as_le();
            let neg: Vec<Rational> = c.iter().map(|x| -x).collect();
            if let LpOutcome::Optimal { value, .. } = self.maximize(&neg) {
                // min c·x = −value
                if -value == b {
                    flags[i] = true;
                }
            }
        }
        Some(flags)
    }

    /// Affine dimension; −1 when empty.
    pub fn dimension(&self) -> i64 {
        let Some(flags) = self.implicit_equalities() else { return -1 };
        let mut rows: Vec<Vec<Rational>> = self.equalities.iter().map(|e| e.coeffs.clone()).collect();
        for (h, f) in self.inequalities.iter().zip(&flags) {
            if *f {
                rows.push(h.coeffs.clone());
            }
        }
        self.n as i64 - lp::rank(&rows) as i64
    }

    /// A point satisfying every non-implicit inequality strictly.
    pub fn relative_interior_point(&self) -> Option<Vec<Rational>> {
        let flags = self.implicit_equalities()?;
        match self.slack_lp(&flags) {
            LpOutcome::Optimal { x, .. } => Some(x[..self.n].to_vec()),
            _ => None,
        }
    }
}

/// Free function form of [`Polytope::dimension`].
pub fn dimension(p: &Polytope) -> i64 {
    p.dimension()
}

/// Free function form of [`Polytope::relative_interior_point`].
pub fn relative_interior_point(p: &Polytope) -> Option<Vec<Rational>> {
    p.relative_interior_point()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_core::q;

    fn square() -> Polytope {
        let mut p = Polytope::new(2);
        for j in 0..2 {
            let mut c = vec![Rational::zero(); 2];
            c[j] = Rational::one();
            p.inequalities.push(Halfspace::le(c.clone(), Rational::one()));
            p.inequalities.push(Halfspace { coeffs: c, bound: Rational::zero(), sense: Sense::Ge });
        }
        p
    }

    #[test]
    fn square_dimensions() {
        let p = square();
        assert_eq!(p.dimension(), 2);
        let edge = p.with([Halfspace::le(vec![q(1, 1), q(0, 1)], q(0, 1))]);
        assert_eq!(edge.dimension(), 1);
        let pt = edge.with([Halfspace::le(vec![q(0, 1), q(1, 1)], q(0, 1))]);
        assert_eq!(pt.dimension(), 0);
        let empty = p.with([Halfspace::le(vec![q(1, 1), q(1, 1)], q(-1, 1))]);
        assert_eq!(empty.dimension(), -1);
        assert!(empty.relative_interior_point().is_none());
    }

    #[test]
    fn interior_point_of_edge() {
        let edge = square().with([Halfspace::le(vec![q(1, 1), q(0, 1)], q(0, 1))]);
        let x = edge.relative_interior_point().unwrap();
        assert_eq!(x[0], q(0, 1));
        assert!(x[1] > q(0, 1) && x[1] < q(1, 1));
    }
}
