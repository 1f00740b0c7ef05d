//! Exact two-phase simplex over the rationals with Bland's rule.
//!
//! Problems are `maximize c·x` subject to linear constraints and `x ≥ 0`.

use crate::rational::Q;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub relation: Relation,
    pub rhs: Q,
}

impl Constraint {
    pub fn new(coeffs: Vec<Q>, relation: Relation, rhs: Q) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lp {
    pub objective: Vec<Q>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// `duals[i]` prices constraint `i` as written: `≥ 0` for `Le`, `≤ 0`
    /// for `Ge`, free for `Eq`, and `Σ duals[i]·rhs[i] = value`.
    Optimal {
        x: Vec<Q>,
        value: Q,
        duals: Vec<Q>,
    },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
    /// Reduced costs `c_j − c_B·B⁻¹A_j`, and `−c_B·B⁻¹b` in `obj_rhs`.
    obj: Vec<Q>,
    obj_rhs: Q,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Q::one() / &self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        let nz: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        for k in 0..self.rows.len() {
            if k == r || self.rows[k][c].is_zero() {
                continue;
            }
            let f = self.rows[k][c].clone();
            for &j in &nz {
                let d = &f * &pivot_row[j];
                self.rows[k][j] -= d;
            }
            self.rhs[k] -= &f * &pivot_rhs;
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for &j in &nz {
                let d = &f * &pivot_row[j];
                self.obj[j] -= d;
            }
            self.obj_rhs -= &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    fn set_objective(&mut self, c: &[Q]) {
        self.obj = c.to_vec();
        self.obj_rhs = Q::zero();
        for (k, &b) in self.basis.iter().enumerate() {
            if c[b].is_zero() {
                continue;
            }
            let cb = c[b].clone();
            for (o, v) in self.obj.iter_mut().zip(&self.rows[k]) {
                if !v.is_zero() {
                    *o -= &cb * v;
                }
            }
            self.obj_rhs -= &cb * &self.rhs[k];
        }
    }

    /// Runs Bland pivots over the columns `allowed`; `false` when unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(enter) = (0..allowed).find(|&j| self.obj[j].is_positive()) else {
                return true;
            };
            let mut leave: Option<(usize, Q)> = None;
            for k in 0..self.rows.len() {
                let a = &self.rows[k][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[k] / a;
                let better = match &leave {
                    None => true,
                    Some((l, best)) => {
                        ratio < *best || (ratio == *best && self.basis[k] < self.basis[*l])
                    }
                };
                if better {
                    leave = Some((k, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }
}

impl Lp {
    pub fn new(objective: Vec<Q>) -> Self {
        Lp {
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn push(&mut self, coeffs: Vec<Q>, relation: Relation, rhs: Q) {
        self.constraints.push(Constraint::new(coeffs, relation, rhs));
    }

    pub fn solve(&self) -> LpOutcome {
        let n = self.objective.len();
        let m = self.constraints.len();
        for c in &self.constraints {
            assert_eq!(c.coeffs.len(), n, "constraint width differs from objective");
        }
        // Normalize to b ≥ 0, then columns: x | slack/surplus | artificial.
        let mut sign = Vec::with_capacity(m);
        let mut rel = Vec::with_capacity(m);
        for c in &self.constraints {
            if c.rhs.is_negative() {
                sign.push(-Q::one());
                rel.push(match c.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                });
            } else {
                sign.push(Q::one());
                rel.push(c.relation);
            }
        }
        let slack_cols: Vec<Option<usize>> = {
            let mut next = n;
            rel.iter()
                .map(|r| match r {
                    Relation::Eq => None,
                    _ => {
                        next += 1;
                        Some(next - 1)
                    }
                })
                .collect()
        };
        let art_start = n + slack_cols.iter().flatten().count();
        let mut art_cols: Vec<Option<usize>> = Vec::with_capacity(m);
        let mut next = art_start;
        for r in &rel {
            if *r == Relation::Le {
                art_cols.push(None);
            } else {
                art_cols.push(Some(next));
                next += 1;
            }
        }
        let width = next;
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        // Column holding B⁻¹'s initial identity for each row.
        let mut unit_col = Vec::with_capacity(m);
        for (i, c) in self.constraints.iter().enumerate() {
            let mut row = vec![Q::zero(); width];
            for (j, v) in c.coeffs.iter().enumerate() {
                row[j] = v * &sign[i];
            }
            if let Some(s) = slack_cols[i] {
                row[s] = if rel[i] == Relation::Le { Q::one() } else { -Q::one() };
            }
            let b = match art_cols[i] {
                Some(a) => {
                    row[a] = Q::one();
                    a
                }
                None => slack_cols[i].expect("Le rows carry a slack"),
            };
            rows.push(row);
            rhs.push(&c.rhs * &sign[i]);
            basis.push(b);
            unit_col.push(b);
        }
        let mut t = Tableau {
            rows,
            rhs,
            basis,
            obj: Vec::new(),
            obj_rhs: Q::zero(),
        };

        if width > art_start {
            let mut phase1 = vec![Q::zero(); width];
            for v in &mut phase1[art_start..] {
                *v = -Q::one();
            }
            t.set_objective(&phase1);
            t.optimize(width);
            if !t.obj_rhs.is_zero() {
                return LpOutcome::Infeasible;
            }
            // Drive zero-level artificials out of the basis where possible.
            for r in 0..m {
                if t.basis[r] >= art_start {
                    if let Some(c) = (0..art_start).find(|&j| !t.rows[r][j].is_zero()) {
                        t.pivot(r, c);
                    }
                }
            }
        }

        let mut cost = vec![Q::zero(); width];
        cost[..n].clone_from_slice(&self.objective);
        t.set_objective(&cost);
        if !t.optimize(art_start) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Q::zero(); n];
        for (k, &b) in t.basis.iter().enumerate() {
            if b < n {
                x[b] = t.rhs[k].clone();
            }
        }
        let value: Q = x.iter().zip(&self.objective).map(|(a, b)| a * b).sum();
        let duals = (0..m)
            .map(|i| {
                let y: Q = t
                    .basis
                    .iter()
                    .enumerate()
                    .map(|(k, &b)| &cost[b] * &t.rows[k][unit_col[i]])
                    .sum();
                y * &sign[i]
            })
            .collect();
        LpOutcome::Optimal { x, value, duals }
    }
}
