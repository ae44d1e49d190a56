//! The Burniat polytope Δ_bur, canonical forms of its cutting halfspaces,
//! and the order-48 relabeling group.

use super::{Equation, Halfspace, Polytope, Sense};
use crate::error::{Error, Result};
use crate::lattice_core::{cremona_map, sigma_label_class, Rational};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

/// Coordinate names in storage order.
pub const COORDS: [&str; 12] =
    ["a0", "a1", "a2", "a3", "b0", "b1", "b2", "b3", "c0", "c1", "c2", "c3"];

/// Positions of the nine free coordinates a0..a2, b0..b2, c0..c2.
pub(crate) const FREE: [usize; 9] = [0, 1, 2, 4, 5, 6, 8, 9, 10];

pub fn coord_index(label: &str) -> Result<usize> {
    COORDS
        .iter()
        .position(|c| c.eq_ignore_ascii_case(label.trim()))
        .ok_or_else(|| Error::InvalidInput(format!("unknown coordinate {label:?}")))
}

pub fn coord_label(i: usize) -> &'static str {
    COORDS[i]
}

/// The index-3 coordinate of each family as a function of the free ones:
/// `x3 = Σ_{sub} x − 1`.
pub(crate) fn index3_definitions() -> [(usize, [usize; 4]); 3] {
    [(3, [8, 9, 10, 4]), (7, [0, 1, 2, 8]), (11, [4, 5, 6, 0])]
}

fn unit(i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); 12];
    v[i] = Rational::one();
    v
}

/// Δ_bur as a 12-coordinate system: three defining equalities, the sum
/// equality, and the 24 bounds `0 ≤ x ≤ ½`.
pub fn delta_bur() -> Polytope {
    let mut p = Polytope::new(12);
    for (lhs, rhs) in index3_definitions() {
        let mut c = unit(lhs);
        for j in rhs {
            c[j] = Rational::from_int(-1);
        }
        p.equalities.push(Equation { coeffs: c, rhs: Rational::from_int(-1) });
    }
    let mut s = vec![Rational::zero(); 12];
    for &j in &FREE {
        s[j] = Rational::one();
    }
    p.equalities.push(Equation { coeffs: s, rhs: Rational::from_int(3) });
    for i in 0..12 {
        p.inequalities.push(Halfspace { coeffs: unit(i), bound: Rational::zero(), sense: Sense::Ge });
        p.inequalities.push(Halfspace::le(unit(i), Rational::half()));
    }
    p
}

/// `Σ_{subset} x ≤ rank`.
pub fn flat_inequality(subset: &[&str], rank_bound: i64) -> Result<Halfspace> {
    if subset.is_empty() {
        return Err(Error::InvalidInput("empty flat".into()));
    }
    if !(1..=2).contains(&rank_bound) {
        return Err(Error::InvalidInput(format!("flat rank {rank_bound} not in 1..2")));
    }
    let mut c = vec![Rational::zero(); 12];
    for l in subset {
        c[coord_index(l)?] += Rational::one();
    }
    Ok(Halfspace::le(c, Rational::from_int(rank_bound)))
}

/// Parses `"c3+a1+a2<=1"`, `"2a0 + b1 >= 1/2"` and similar.
pub fn parse_inequality(s: &str) -> Result<Halfspace> {
    let bad = || Error::InvalidInput(format!("bad inequality {s:?}"));
    let (lhs, rhs, sense) = if let Some((l, r)) = s.split_once("<=") {
        (l, r, Sense::Le)
    } else if let Some((l, r)) = s.split_once(">=") {
        (l, r, Sense::Ge)
    } else if let Some((l, r)) = s.split_once('≤') {
        (l, r, Sense::Le)
    } else if let Some((l, r)) = s.split_once('≥') {
        (l, r, Sense::Ge)
    } else {
        return Err(bad());
    };
    let bound: Rational = rhs.trim().parse().map_err(|_| bad())?;
    let mut coeffs = vec![Rational::zero(); 12];
    let cleaned: String = lhs.chars().filter(|c| !c.is_whitespace()).collect();
    let cleaned = cleaned.replace('-', "+-");
    for term in cleaned.split('+').filter(|t| !t.is_empty()) {
        let (neg, term) = match term.strip_prefix('-') {
            Some(t) => (true, t),
            None => (false, term),
        };
        let split = term.find(|c: char| c.is_ascii_alphabetic()).ok_or_else(bad)?;
        let (num, var) = term.split_at(split);
        let mut c: Rational = if num.is_empty() { Rational::one() } else { num.parse().map_err(|_| bad())? };
        if neg {
            c = -c;
        }
        coeffs[coord_index(var)?] += c;
    }
    let h = Halfspace { coeffs, bound, sense };
    h.validate(12)?;
    Ok(h)
}

/// A halfspace on the affine hull of Δ_bur in normal form: written in the
/// nine free coordinates with `≤`, shifted by the sum equality so that the
/// smallest coefficient is zero, and scaled to primitive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalHalfspace {
    pub coeffs: [i64; 9],
    pub bound: Rational,
}

/// Result of normalizing a halfspace that may be constant on the hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Canonical {
    Proper(CanonicalHalfspace),
    Always,
    Never,
}

fn lcm_of_denoms(xs: &[Rational]) -> num_bigint::BigInt {
    xs.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(&x.denom()))
}

fn normalize9(g: [Rational; 9], bound: Rational) -> Canonical {
    let min = g.iter().min().cloned().expect("nine entries");
    let g: Vec<Rational> = g.iter().map(|x| x - &min).collect();
    let bound = &bound - &(&min * &Rational::from_int(3));
    if g.iter().all(|x| x.is_zero()) {
        return if bound.is_negative() { Canonical::Never } else { Canonical::Always };
    }
    let l = lcm_of_denoms(&g);
    let ints: Vec<num_bigint::BigInt> = g.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let gcd = ints.iter().fold(num_bigint::BigInt::from(0), |acc, x| acc.gcd(x));
    let mut coeffs = [0i64; 9];
    for (c, x) in coeffs.iter_mut().zip(&ints) {
        *c = (x / &gcd).to_i64().expect("small coefficients");
    }
    let factor = Rational::from_big(l, gcd.abs());
    Canonical::Proper(CanonicalHalfspace { coeffs, bound: &bound * &factor })
}

/// Normal form of a 12-coordinate halfspace on the hull of Δ_bur.
pub fn canonical(h: &Halfspace) -> Result<Canonical> {
    h.validate(12)?;
    let (c, b) = h.as_le();
    let mut g: [Rational; 9] = std::array::from_fn(|i| c[FREE[i]].clone());
    let mut bound = b;
    for (lhs, rhs) in index3_definitions() {
        let a = &c[lhs];
        if a.is_zero() {
            continue;
        }
        for j in rhs {
            let k = FREE.iter().position(|&f| f == j).expect("free");
            g[k] += a;
        }
        bound += a;
    }
    Ok(normalize9(g, bound))
}

impl CanonicalHalfspace {
    /// 12-coordinate halfspace with the index-3 coefficients zero.
    pub fn to_halfspace(&self) -> Halfspace {
        let mut c = vec![Rational::zero(); 12];
        for (i, &f) in FREE.iter().enumerate() {
            c[f] = Rational::from_int(self.coeffs[i]);
        }
        Halfspace::le(c, self.bound.clone())
    }

    /// The complementary halfspace (same hyperplane, other side).
    pub fn flip(&self) -> CanonicalHalfspace {
        let g: [Rational; 9] = std::array::from_fn(|i| Rational::from_int(-self.coeffs[i]));
        match normalize9(g, -&self.bound) {
            Canonical::Proper(c) => c,
            _ => unreachable!("a proper halfspace flips to a proper halfspace"),
        }
    }

    pub fn apply(&self, perm: &Perm) -> CanonicalHalfspace {
        let h = self.to_halfspace();
        let mut c = vec![Rational::zero(); 12];
        for i in 0..12 {
            c[perm.0[i] as usize] = h.coeffs[i].clone();
        }
        match canonical(&Halfspace::le(c, h.bound)).expect("twelve coefficients") {
            Canonical::Proper(c) => c,
            _ => unreachable!("relabeling preserves properness"),
        }
    }

    /// Value of the left-hand side at a point given in free coordinates.
    pub fn lhs_free(&self, x9: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(x9)
            .filter(|(c, _)| **c != 0)
            .map(|(c, x)| &Rational::from_int(*c) * x)
            .sum()
    }

    /// The shortest equivalent form with 0/1 coefficients over all twelve
    /// coordinates, as printed in tables (`"a1+a2+c3<=1"`).
    pub fn pretty(&self) -> String {
        let h = self.to_halfspace();
        let eqs = delta_bur().equalities;
        let mut best: Option<(usize, Vec<usize>, Rational, Vec<Rational>)> = None;
        for lam in -2i64..=2 {
            for ma in -2i64..=2 {
                for mb in -2i64..=2 {
                    for mc in -2i64..=2 {
                        let mult = [ma, mb, mc, lam];
                        let mut c = h.coeffs.clone();
                        let mut b = h.bound.clone();
                        for (e, m) in eqs.iter().zip(mult) {
                            if m == 0 {
                                continue;
                            }
                            let m = Rational::from_int(m);
                            for (x, y) in c.iter_mut().zip(&e.coeffs) {
                                *x += &(&m * y);
                            }
                            b += &m * &e.rhs;
                        }
                        if c.iter().any(|x| x.is_negative() || *x > Rational::one()) {
                            continue;
                        }
                        let support: Vec<usize> = (0..12).filter(|&i| !c[i].is_zero()).collect();
                        let key = (support.len(), support.clone());
                        let better = match &best {
                            None => true,
                            Some((n, s, _, _)) => key < (*n, s.clone()),
                        };
                        if better {
                            best = Some((support.len(), support, b, c));
                        }
                    }
                }
            }
        }
        match best {
            Some((_, support, b, _)) => {
                let terms: Vec<&str> = support.iter().map(|&i| COORDS[i]).collect();
                format!("{}<={}", terms.join("+"), b)
            }
            None => self.free_form(),
        }
    }

    fn free_form(&self) -> String {
        let mut s = String::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('+');
            }
            if c != 1 {
                s.push_str(&c.to_string());
            }
            s.push_str(COORDS[FREE[i]]);
        }
        format!("{s}<={}", self.bound)
    }
}

impl fmt::Display for CanonicalHalfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

/// A permutation of the twelve coordinates: `x_i` moves to slot `0[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub [u8; 12]);

impl Perm {
    pub fn identity() -> Self {
        Perm(std::array::from_fn(|i| i as u8))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(std::array::from_fn(|i| self.0[other.0[i] as usize]))
    }

    pub fn swap(a: usize, b: usize) -> Perm {
        let mut p = Self::identity();
        p.0.swap(a, b);
        p
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Images of the coordinate names, e.g. `a0→c3`.
    pub fn describe(&self) -> String {
        (0..12)
            .filter(|&i| self.0[i] as usize != i)
            .map(|i| format!("{}→{}", COORDS[i], COORDS[self.0[i] as usize]))
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    pub generators: Vec<(String, Perm)>,
    pub elements: Vec<Perm>,
}

/// Does relabeling by `p` map Δ_bur onto itself? Bounds are permuted among
/// themselves, so this reduces to invariance of the equality span.
pub fn preserves_delta_bur(p: &Perm) -> bool {
    let eqs = delta_bur().equalities;
    let rows: Vec<Vec<Rational>> = eqs
        .iter()
        .map(|e| {
            let mut r = e.coeffs.clone();
            r.push(e.rhs.clone());
            r
        })
        .collect();
    let mut all = rows.clone();
    for r in &rows {
        let mut moved = vec![Rational::zero(); 13];
        for i in 0..12 {
            moved[p.0[i] as usize] = r[i].clone();
        }
        moved[12] = r[12].clone();
        all.push(moved);
    }
    super::lp::rank(&all) == super::lp::rank(&rows)
}

/// Index permutation induced by the Cremona map on the classes of the twelve
/// strict transforms.
pub fn cremona_perm() -> Perm {
    let classes: Vec<Vec<i64>> =
        COORDS.iter().map(|c| sigma_label_class(c).expect("static")).collect();
    let mut p = [0u8; 12];
    for (i, c) in classes.iter().enumerate() {
        let img = cremona_map(c).expect("rank 4");
        // A1 and A2 share a class; keep their indices.
        let j = if i % 4 == 1 || i % 4 == 2 {
            i
        } else {
            classes.iter().position(|d| *d == img).expect("image is a label class")
        };
        p[i] = j as u8;
    }
    Perm(p)
}

/// Family rotation A→B→C→A on indices (`a_i ↦ b_i` etc.), an auxiliary
/// building block for the hexagon rotation.
fn family_cycle() -> Perm {
    Perm(std::array::from_fn(|i| ((i + 4) % 12) as u8))
}

/// The order-six rotation ρ: `a_i ↦ c_{τi}`, `c_i ↦ b_{τi}`, `b_i ↦ a_{τi}`
/// with τ the Cremona index swap 0↔3, so that ρ³ is the Cremona relabeling.
pub fn hexagon_rotation() -> Perm {
    // a→c is two steps of the A→B→C cycle.
    let cyc = family_cycle();
    let back = cyc.compose(&cyc);
    cremona_perm().compose(&back)
}

/// The relabeling group generated by the three 1↔2 swaps and ρ.
pub fn symmetry_group() -> Result<SymmetryGroup> {
    let generators = vec![
        ("swap a1<->a2".to_string(), Perm::swap(1, 2)),
        ("swap b1<->b2".to_string(), Perm::swap(5, 6)),
        ("swap c1<->c2".to_string(), Perm::swap(9, 10)),
        ("rotation".to_string(), hexagon_rotation()),
    ];
    for (name, g) in &generators {
        if !preserves_delta_bur(g) {
            return Err(Error::InvalidInput(format!("generator {name} does not preserve Δ_bur")));
        }
    }
    let mut seen: BTreeSet<Perm> = BTreeSet::new();
    let mut queue = VecDeque::from([Perm::identity()]);
    seen.insert(Perm::identity());
    while let Some(p) = queue.pop_front() {
        for (_, g) in &generators {
            let n = g.compose(&p);
            if seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    Ok(SymmetryGroup { generators, elements: seen.into_iter().collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_core::q;

    fn canon(s: &str) -> CanonicalHalfspace {
        match canonical(&parse_inequality(s).unwrap()).unwrap() {
            Canonical::Proper(c) => c,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sum_equality_shift() {
        assert_eq!(canon("a0+a1+a2>=1"), canon("b0+b1+b2+c0+c1+c2<=2"));
        assert_eq!(canon("c3+a1+a2<=1"), canon("a0+a1+a2+b0+b1+b2<=2"));
    }

    #[test]
    fn flip_is_involution() {
        let c = canon("a1+a2+b1+b2+c1<=2");
        assert_eq!(c.flip().flip(), c);
        assert_eq!(c.flip(), canon("a1+a2+b1+b2+c1>=2"));
    }

    #[test]
    fn pretty_recovers_short_forms() {
        assert_eq!(canon("c3+a1+a2<=1").pretty(), "a1+a2+c3<=1");
        assert_eq!(canon("a0+b0+c0+c2<=1").pretty(), "a0+b0+c0+c2<=1");
    }

    #[test]
    fn trivial_halfspaces() {
        let all = parse_inequality("a0+a1+a2+b0+b1+b2+c0+c1+c2<=3").unwrap();
        assert_eq!(canonical(&all).unwrap(), Canonical::Always);
    }

    #[test]
    fn group_order_and_cremona() {
        let g = symmetry_group().unwrap();
        assert_eq!(g.elements.len(), 48);
        let rho = hexagon_rotation();
        let rho3 = rho.compose(&rho).compose(&rho);
        assert_eq!(rho3, cremona_perm());
        for f in 0..3 {
            assert_eq!(rho3.0[4 * f] as usize, 4 * f + 3);
            assert_eq!(rho3.0[4 * f + 1] as usize, 4 * f + 1);
        }
        assert!(g.elements.iter().all(preserves_delta_bur));
    }

    #[test]
    fn parse_forms() {
        let h = parse_inequality("2a0 - b1/2 >= 1/2").unwrap_err();
        assert!(matches!(h, Error::InvalidInput(_)));
        let h = parse_inequality("2a0 - 1/2b1 >= 1/2").unwrap();
        assert_eq!(h.coeffs[0], q(2, 1));
        assert_eq!(h.coeffs[5], q(-1, 2));
        assert_eq!(h.sense, Sense::Ge);
    }
}
