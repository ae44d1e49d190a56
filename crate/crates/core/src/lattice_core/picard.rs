//! Picard lattices of the rational surfaces that occur as bases of covers.

use super::rational::Rational;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SurfaceKind {
    P2,
    Sigma,
    P1xP1,
    F1,
    Bl4P2,
}

impl SurfaceKind {
    pub fn tag(&self) -> &'static str {
        match self {
            SurfaceKind::P2 => "P2",
            SurfaceKind::Sigma => "Sigma",
            SurfaceKind::P1xP1 => "P1xP1",
            SurfaceKind::F1 => "F1",
            SurfaceKind::Bl4P2 => "Bl4P2",
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SurfaceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "P2" => SurfaceKind::P2,
            "Sigma" => SurfaceKind::Sigma,
            "P1xP1" => SurfaceKind::P1xP1,
            "F1" => SurfaceKind::F1,
            "Bl4P2" => SurfaceKind::Bl4P2,
            other => return Err(Error::Unsupported(format!("base surface {other:?}"))),
        })
    }
}

/// A divisor class as integer coordinates in the preset basis.
pub type DivisorClass = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseSurface {
    pub name: SurfaceKind,
    pub pic_rank: usize,
    pub intersection_form: Vec<Vec<i64>>,
    pub canonical_class: DivisorClass,
    pub ampleness_test_curves: Vec<DivisorClass>,
}

fn diag(d: &[i64]) -> Vec<Vec<i64>> {
    (0..d.len())
        .map(|i| (0..d.len()).map(|j| if i == j { d[i] } else { 0 }).collect())
        .collect()
}

impl BaseSurface {
    pub fn preset(kind: SurfaceKind) -> Self {
        match kind {
            SurfaceKind::P2 => BaseSurface {
                name: kind,
                pic_rank: 1,
                intersection_form: diag(&[1]),
                canonical_class: vec![-3],
                ampleness_test_curves: vec![vec![1]],
            },
            // Basis (H, E_A, E_B, E_C).
            SurfaceKind::Sigma => BaseSurface {
                name: kind,
                pic_rank: 4,
                intersection_form: diag(&[1, -1, -1, -1]),
                canonical_class: vec![-3, 1, 1, 1],
                ampleness_test_curves: vec![
                    vec![0, 1, 0, 0],
                    vec![0, 0, 1, 0],
                    vec![0, 0, 0, 1],
                    vec![1, 0, -1, -1],
                    vec![1, -1, 0, -1],
                    vec![1, -1, -1, 0],
                ],
            },
            // Basis (s, f) of the two rulings.
            SurfaceKind::P1xP1 => BaseSurface {
                name: kind,
                pic_rank: 2,
                intersection_form: vec![vec![0, 1], vec![1, 0]],
                canonical_class: vec![-2, -2],
                ampleness_test_curves: vec![vec![1, 0], vec![0, 1]],
            },
            // Basis (H, E).
            SurfaceKind::F1 => BaseSurface {
                name: kind,
                pic_rank: 2,
                intersection_form: diag(&[1, -1]),
                canonical_class: vec![-3, 1],
                ampleness_test_curves: vec![vec![0, 1], vec![1, -1]],
            },
            // Basis (H, E_1, .., E_4).
            SurfaceKind::Bl4P2 => {
                let mut curves: Vec<DivisorClass> = (1..5)
                    .map(|i| {
                        let mut v = vec![0; 5];
                        v[i] = 1;
                        v
                    })
                    .collect();
                for i in 1..5 {
                    for j in (i + 1)..5 {
                        let mut v = vec![1, 0, 0, 0, 0];
                        v[i] = -1;
                        v[j] = -1;
                        curves.push(v);
                    }
                }
                BaseSurface {
                    name: kind,
                    pic_rank: 5,
                    intersection_form: diag(&[1, -1, -1, -1, -1]),
                    canonical_class: vec![-3, 1, 1, 1, 1],
                    ampleness_test_curves: curves,
                }
            }
        }
    }

    pub fn p2() -> Self {
        Self::preset(SurfaceKind::P2)
    }

    pub fn sigma() -> Self {
        Self::preset(SurfaceKind::Sigma)
    }

    fn check(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.pic_rank {
            return Err(Error::InvalidInput(format!(
                "class of length {} on {} (rank {})",
                v.len(),
                self.name,
                self.pic_rank
            )));
        }
        Ok(())
    }

    /// Numeric ampleness screen: positive square and positive degree on every
    /// test curve. Only a necessary condition in general.
    pub fn passes_ampleness_screen(&self, d: &[Rational]) -> Result<bool> {
        if d.len() != self.pic_rank {
            return Err(Error::InvalidInput("dimension mismatch".into()));
        }
        if !self.intersect_rational(d, d)?.is_positive() {
            return Ok(false);
        }
        for c in &self.ampleness_test_curves {
            let cq: Vec<Rational> = c.iter().map(|&x| Rational::from_int(x)).collect();
            if !self.intersect_rational(d, &cq)?.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn intersect_rational(&self, a: &[Rational], b: &[Rational]) -> Result<Rational> {
        if a.len() != self.pic_rank || b.len() != self.pic_rank {
            return Err(Error::InvalidInput("dimension mismatch".into()));
        }
        let mut acc = Rational::zero();
        for i in 0..self.pic_rank {
            for j in 0..self.pic_rank {
                let f = self.intersection_form[i][j];
                if f != 0 {
                    acc += &(&a[i] * &b[j]) * &Rational::from_int(f);
                }
            }
        }
        Ok(acc)
    }
}

/// `aᵀ·Q·b` on the surface `s`.
pub fn intersect_classes(a: &[i64], b: &[i64], s: &BaseSurface) -> Result<i64> {
    s.check(a)?;
    s.check(b)?;
    let mut acc = 0i64;
    for i in 0..s.pic_rank {
        for j in 0..s.pic_rank {
            acc += a[i] * s.intersection_form[i][j] * b[j];
        }
    }
    Ok(acc)
}

/// Riemann–Roch on a rational surface: χ(𝒪(D)) = 1 + D·(D − K)/2.
pub fn riemann_roch_chi(d: &[i64], s: &BaseSurface) -> Result<Rational> {
    if *s != BaseSurface::preset(s.name) {
        return Err(Error::Unsupported("Riemann-Roch needs a preset surface".into()));
    }
    let dd = intersect_classes(d, d, s)?;
    let dk = intersect_classes(d, &s.canonical_class, s)?;
    Ok(Rational::one() + Rational::new(dd - dk, 2))
}

/// The quadratic transformation on Pic(Σ): H ↦ 2H − E_A − E_B − E_C and
/// E_A ↦ H − E_B − E_C (cyclically).
pub fn cremona_map(d: &[i64]) -> Result<DivisorClass> {
    if d.len() != 4 {
        return Err(Error::InvalidInput("Cremona acts on classes of Σ (rank 4)".into()));
    }
    let images: [[i64; 4]; 4] = [
        [2, -1, -1, -1],
        [1, 0, -1, -1],
        [1, -1, 0, -1],
        [1, -1, -1, 0],
    ];
    let mut out = vec![0i64; 4];
    for (coef, img) in d.iter().zip(images.iter()) {
        for j in 0..4 {
            out[j] += coef * img[j];
        }
    }
    Ok(out)
}

/// Class on Σ of the strict transform named by a Burniat label such as
/// `"A0"` or `"C3"`.
pub fn sigma_label_class(label: &str) -> Result<DivisorClass> {
    let mut chars = label.chars();
    let fam = chars.next().map(|c| c.to_ascii_uppercase());
    let idx: Option<u32> = chars.as_str().parse().ok();
    // Positions of E_A, E_B, E_C in the basis.
    let (own, next, prev) = match fam {
        Some('A') => (1usize, 2usize, 3usize),
        Some('B') => (2, 3, 1),
        Some('C') => (3, 1, 2),
        _ => return Err(Error::InvalidInput(format!("bad Burniat label {label:?}"))),
    };
    let mut v = vec![0i64; 4];
    match idx {
        Some(0) => {
            v[0] = 1;
            v[next] = -1;
            v[prev] = -1;
        }
        Some(1) | Some(2) => {
            v[0] = 1;
            v[next] = -1;
        }
        Some(3) => v[own] = 1,
        _ => return Err(Error::InvalidInput(format!("bad Burniat label {label:?}"))),
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_squares() {
        for (kind, k2) in [
            (SurfaceKind::P2, 9),
            (SurfaceKind::Sigma, 6),
            (SurfaceKind::P1xP1, 8),
            (SurfaceKind::F1, 8),
            (SurfaceKind::Bl4P2, 5),
        ] {
            let s = BaseSurface::preset(kind);
            assert_eq!(intersect_classes(&s.canonical_class, &s.canonical_class, &s).unwrap(), k2);
        }
    }

    #[test]
    fn sigma_examples() {
        let s = BaseSurface::sigma();
        assert_eq!(intersect_classes(&[1, 0, -1, -1], &[1, 0, -1, -1], &s).unwrap(), -1);
        let p = BaseSurface::preset(SurfaceKind::P1xP1);
        assert_eq!(intersect_classes(&[1, 1], &[1, 1], &p).unwrap(), 2);
        assert!(intersect_classes(&[1, 0], &[1, 0, 0, 0], &s).is_err());
    }

    #[test]
    fn rr_examples() {
        let p2 = BaseSurface::p2();
        assert_eq!(riemann_roch_chi(&[-2], &p2).unwrap(), Rational::zero());
        assert_eq!(riemann_roch_chi(&[0], &p2).unwrap(), Rational::one());
        let s = BaseSurface::sigma();
        assert_eq!(riemann_roch_chi(&[-3, 2, 0, 1], &s).unwrap(), Rational::zero());
    }

    #[test]
    fn cremona_examples() {
        assert_eq!(cremona_map(&sigma_label_class("A0").unwrap()).unwrap(), sigma_label_class("A3").unwrap());
        assert_eq!(cremona_map(&[-3, 1, 1, 1]).unwrap(), vec![-3, 1, 1, 1]);
        assert_eq!(cremona_map(&sigma_label_class("A1").unwrap()).unwrap(), sigma_label_class("A1").unwrap());
    }

    #[test]
    fn labels_have_expected_squares() {
        let s = BaseSurface::sigma();
        for f in ["A", "B", "C"] {
            for i in 0..4 {
                let c = sigma_label_class(&format!("{f}{i}")).unwrap();
                let sq = intersect_classes(&c, &c, &s).unwrap();
                assert_eq!(sq, if i == 1 || i == 2 { 0 } else { -1 });
            }
        }
    }
}
