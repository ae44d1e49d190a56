//! Dense two-phase simplex over exact rationals with Bland's rule.

use crate::lattice_core::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Row {
    pub coeffs: Vec<Rational>,
    pub cmp: Cmp,
    pub rhs: Rational,
}

/// `maximize obj·x` subject to `rows`, with `x_j ≥ 0` where `nonneg[j]`.
#[derive(Clone, Debug)]
pub struct Lp {
    pub n: usize,
    pub nonneg: Vec<bool>,
    pub obj: Vec<Rational>,
    pub rows: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
    // Columns that may never enter (dropped artificials).
    blocked: Vec<bool>,
}

impl Tableau {
    fn pivot(&mut self, obj: &mut [Rational], p: usize, q: usize) {
        let inv = self.t[p][q].recip();
        let row_p: Vec<Rational> = self.t[p].iter().map(|x| x * &inv).collect();
        let nz: Vec<usize> = (0..=self.ncols).filter(|&j| !row_p[j].is_zero()).collect();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == p || row[q].is_zero() {
                continue;
            }
            let f = row[q].clone();
            for &j in &nz {
                row[j] -= &(&f * &row_p[j]);
            }
        }
        if !obj[q].is_zero() {
            let f = obj[q].clone();
            for &j in &nz {
                obj[j] -= &(&f * &row_p[j]);
            }
        }
        self.t[p] = row_p;
        self.basis[p] = q;
    }

    /// Runs Bland's rule on the reduced-cost row `obj` (maximization; the
    /// last entry holds minus the objective value). Returns false when
    /// unbounded.
    fn optimize(&mut self, obj: &mut [Rational]) -> bool {
        loop {
            let entering = (0..self.ncols).find(|&j| !self.blocked[j] && obj[j].is_positive());
            let Some(q) = entering else { return true };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][q];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.t[i][self.ncols] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((p, _)) => self.pivot(obj, p, q),
            }
        }
    }

    fn reduced_costs(&self, c: &[Rational]) -> Vec<Rational> {
        let mut r: Vec<Rational> = c.to_vec();
        r.push(Rational::zero());
        for (i, row) in self.t.iter().enumerate() {
            let cb = &c[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for j in 0..=self.ncols {
                if !row[j].is_zero() {
                    r[j] -= &(cb * &row[j]);
                }
            }
        }
        r
    }
}

impl Lp {
    pub fn new(n: usize) -> Self {
        Lp { n, nonneg: vec![false; n], obj: vec![Rational::zero(); n], rows: Vec::new() }
    }

    pub fn push(&mut self, coeffs: Vec<Rational>, cmp: Cmp, rhs: Rational) {
        debug_assert_eq!(coeffs.len(), self.n);
        self.rows.push(Row { coeffs, cmp, rhs });
    }

    pub fn solve(&self) -> LpOutcome {
        // Column layout: split variables, then slack/surplus, then artificials.
        let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(self.n);
        let mut nv = 0;
        for j in 0..self.n {
            if self.nonneg[j] {
                col_of.push((nv, None));
                nv += 1;
            } else {
                col_of.push((nv, Some(nv + 1)));
                nv += 2;
            }
        }
        let m = self.rows.len();
        let mut rows: Vec<(Vec<Rational>, Cmp, Rational)> = Vec::with_capacity(m);
        for r in &self.rows {
            let mut v = vec![Rational::zero(); nv];
            for j in 0..self.n {
                if r.coeffs[j].is_zero() {
                    continue;
                }
                let (p, neg) = col_of[j];
                v[p] = r.coeffs[j].clone();
                if let Some(nc) = neg {
                    v[nc] = -&r.coeffs[j];
                }
            }
            let (v, cmp, rhs) = if r.rhs.is_negative() {
                let flipped = match r.cmp {
                    Cmp::Le => Cmp::Ge,
                    Cmp::Ge => Cmp::Le,
                    Cmp::Eq => Cmp::Eq,
                };
                (v.into_iter().map(|x| -x).collect(), flipped, -&r.rhs)
            } else {
                (v, r.cmp, r.rhs.clone())
            };
            rows.push((v, cmp, rhs));
        }
        let n_slack = rows.iter().filter(|r| r.1 != Cmp::Eq).count();
        let n_art = rows.iter().filter(|r| r.1 != Cmp::Le).count();
        let ncols = nv + n_slack + n_art;
        let mut t = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut si, mut ai) = (nv, nv + n_slack);
        for (v, cmp, rhs) in rows {
            let mut row = v;
            row.resize(ncols + 1, Rational::zero());
            row[ncols] = rhs;
            match cmp {
                Cmp::Le => {
                    row[si] = Rational::one();
                    basis.push(si);
                    si += 1;
                }
                Cmp::Ge => {
                    row[si] = Rational::from_int(-1);
                    si += 1;
                    row[ai] = Rational::one();
                    basis.push(ai);
                    ai += 1;
                }
                Cmp::Eq => {
                    row[ai] = Rational::one();
                    basis.push(ai);
                    ai += 1;
                }
            }
            t.push(row);
        }
        let mut tab = Tableau { t, basis, ncols, blocked: vec![false; ncols] };
        let art_start = nv + n_slack;

        if n_art > 0 {
            let mut c1 = vec![Rational::zero(); ncols];
            for c in c1.iter_mut().skip(art_start) {
                *c = Rational::from_int(-1);
            }
            let mut obj = tab.reduced_costs(&c1);
            tab.optimize(&mut obj);
            if !obj[ncols].is_zero() {
                return LpOutcome::Infeasible;
            }
            // Drive remaining artificials out of the basis.
            let mut i = 0;
            while i < tab.t.len() {
                if tab.basis[i] >= art_start {
                    match (0..art_start).find(|&j| !tab.t[i][j].is_zero()) {
                        Some(q) => {
                            let mut dummy = vec![Rational::zero(); ncols + 1];
                            tab.pivot(&mut dummy, i, q);
                            i += 1;
                        }
                        None => {
                            tab.t.remove(i);
                            tab.basis.remove(i);
                        }
                    }
                } else {
                    i += 1;
                }
            }
            for b in tab.blocked.iter_mut().skip(art_start) {
                *b = true;
            }
        }

        let mut c2 = vec![Rational::zero(); ncols];
        for j in 0..self.n {
            let (p, neg) = col_of[j];
            c2[p] = self.obj[j].clone();
            if let Some(nc) = neg {
                c2[nc] = -&self.obj[j];
            }
        }
        let mut obj = tab.reduced_costs(&c2);
        if !tab.optimize(&mut obj) {
            return LpOutcome::Unbounded;
        }
        let mut colval = vec![Rational::zero(); ncols];
        for (i, &b) in tab.basis.iter().enumerate() {
            colval[b] = tab.t[i][ncols].clone();
        }
        let x: Vec<Rational> = (0..self.n)
            .map(|j| {
                let (p, neg) = col_of[j];
                match neg {
                    Some(nc) => &colval[p] - &colval[nc],
                    None => colval[p].clone(),
                }
            })
            .collect();
        LpOutcome::Optimal { value: -&obj[ncols], x }
    }
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        let pivot: Vec<Rational> = m[r].iter().map(|x| x * &inv).collect();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    if !pivot[j].is_zero() {
                        m[i][j] -= &(&f * &pivot[j]);
                    }
                }
            }
        }
        m[r] = pivot;
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}
