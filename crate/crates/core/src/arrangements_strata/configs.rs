//! Degenerate Burniat configurations used to generate the candidate cells.
//!
//! Only two shapes of the triangle occur, since P_A, P_B, P_C stay
//! distinct: a proper triangle, or three collinear points with A0 = B0 = C0.
//! Each pencil line either equals a side through its center, repeats the
//! other line of its pencil, is generic, or (for the C pencil) passes
//! through the meeting point of a generic A-line and a generic B-line.
//! Three distinct non-side lines from different pencils are the only way to
//! get a triple point off the centers, so these choices reach every
//! nontrivial inequality.

use super::sigma::{arrangement_lc_scan, LINE_LABELS};
use super::{ArrangementKind, ArrangementLine, LineArrangement, PVec};
use crate::error::Result;
use crate::lattice_core::Rational;
use crate::polytopes::Halfspace;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Triangle,
    Collinear,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Choice {
    /// The `n`-th side through the pencil's center.
    Side(usize),
    /// Same line as the first member of the pencil.
    Repeat,
    Generic,
    /// Through P_A and A_i ∩ B_j (C pencil only).
    Through(usize, usize),
}

#[derive(Clone, Debug)]
pub struct Config {
    pub mode: Mode,
    pub choices: [Choice; 6],
}

struct Frame {
    centers: [PVec; 3],
    /// Sides A0, B0, C0.
    sides: [PVec; 3],
    /// Sides through each center, by index into `sides`.
    through: [Vec<usize>; 3],
}

fn frame(mode: Mode) -> Frame {
    match mode {
        Mode::Triangle => Frame {
            centers: [PVec::from_ints(1, 0, 0), PVec::from_ints(0, 1, 0), PVec::from_ints(0, 0, 1)],
            sides: [PVec::from_ints(1, 0, 0), PVec::from_ints(0, 1, 0), PVec::from_ints(0, 0, 1)],
            // P_A on B0, C0; P_B on C0, A0; P_C on A0, B0.
            through: [vec![1, 2], vec![2, 0], vec![0, 1]],
        },
        Mode::Collinear => {
            let l = PVec::from_ints(0, 0, 1);
            Frame {
                centers: [PVec::from_ints(1, 0, 0), PVec::from_ints(0, 1, 0), PVec::from_ints(1, 1, 0)],
                sides: [l.clone(), l.clone(), l],
                through: [vec![0], vec![0], vec![0]],
            }
        }
    }
}

/// Pencil of family X is centered at: A lines at P_B, B lines at P_C, C
/// lines at P_A.
const PENCIL_CENTER: [usize; 3] = [1, 2, 0];

fn random_point(rng: &mut ChaCha8Rng) -> PVec {
    let mut r = || Rational::new(rng.gen_range(-997..=997), rng.gen_range(1..=89));
    PVec([Rational::one(), r(), r()])
}

impl Config {
    /// Realizes the configuration with generic parameters drawn from `seed`.
    pub fn realize(&self, seed: u64) -> LineArrangement {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = frame(self.mode);
        let mut pencil: [Vec<PVec>; 3] = Default::default();
        for fam in 0..3 {
            let center = &f.centers[PENCIL_CENTER[fam]];
            for slot in 0..2 {
                let line = match self.choices[fam * 2 + slot] {
                    Choice::Side(n) => f.sides[f.through[PENCIL_CENTER[fam]][n]].clone(),
                    Choice::Repeat => pencil[fam][0].clone(),
                    Choice::Generic => center.cross(&random_point(&mut rng)),
                    Choice::Through(i, j) => {
                        let q = pencil[0][i].cross(&pencil[1][j]);
                        center.cross(&q)
                    }
                };
                pencil[fam].push(line);
            }
        }
        let mut lines = Vec::new();
        for (fam, name) in ["A", "B", "C"].iter().enumerate() {
            lines.push(ArrangementLine { label: format!("{name}0"), coeffs: f.sides[fam].to_vec() });
            for (slot, l) in pencil[fam].iter().enumerate() {
                lines.push(ArrangementLine { label: format!("{name}{}", slot + 1), coeffs: l.to_vec() });
            }
        }
        let points = ["PA", "PB", "PC"]
            .iter()
            .zip(&f.centers)
            .map(|(n, p)| (n.to_string(), p.to_vec()))
            .collect::<BTreeMap<_, _>>();
        debug_assert_eq!(lines.len(), LINE_LABELS.len());
        LineArrangement { kind: ArrangementKind::Burniat, lines, points: Some(points) }
    }
}

/// Every configuration of the two shapes.
pub fn all_configs() -> Vec<Config> {
    let mut out = Vec::new();
    for mode in [Mode::Triangle, Mode::Collinear] {
        let nsides = frame(mode).through[0].len();
        let first: Vec<Choice> = (0..nsides).map(Choice::Side).chain([Choice::Generic]).collect();
        let second: Vec<Choice> = first.iter().copied().chain([Choice::Repeat]).collect();
        for a1 in &first {
            for a2 in &second {
                for b1 in &first {
                    for b2 in &second {
                        let generic_a: Vec<usize> =
                            [(0, a1), (1, a2)].iter().filter(|(_, c)| **c == Choice::Generic).map(|(i, _)| *i).collect();
                        let generic_b: Vec<usize> =
                            [(0, b1), (1, b2)].iter().filter(|(_, c)| **c == Choice::Generic).map(|(i, _)| *i).collect();
                        let mut through = Vec::new();
                        for &i in &generic_a {
                            for &j in &generic_b {
                                through.push(Choice::Through(i, j));
                            }
                        }
                        let c_first: Vec<Choice> = first.iter().copied().chain(through.iter().copied()).collect();
                        let c_second: Vec<Choice> = c_first.iter().copied().chain([Choice::Repeat]).collect();
                        for c1 in &c_first {
                            for c2 in &c_second {
                                out.push(Config { mode, choices: [*a1, *a2, *b1, *b2, *c1, *c2] });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Violated inequality systems of all configurations, one per configuration.
pub fn candidate_systems() -> Result<Vec<Vec<Halfspace>>> {
    all_configs()
        .par_iter()
        .enumerate()
        .map(|(i, c)| arrangement_lc_scan(&c.realize(i as u64)).map(|s| s.violated))
        .collect()
}
