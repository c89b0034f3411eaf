//! Exact rational two-phase simplex with Bland's rule.
//!
//! Solves `min cᵀx` subject to linear rows (`=`, `≤`, `≥`) and `x ≥ 0`. Every
//! row receives an artificial column, which keeps `B⁻¹` readable from the
//! tableau and makes the dual vector available for certificates.

use crate::arith::Q;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

#[derive(Debug, Clone)]
pub struct Row {
    pub coeffs: Vec<(usize, Q)>,
    pub rel: Relation,
    pub rhs: Q,
}

#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Q>,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<Q>,
    pub value: Q,
    /// One multiplier per original row, in the original row orientation.
    pub dual: Vec<Q>,
    pub pivots: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

struct Tableau {
    t: Vec<Vec<Q>>,
    obj: Vec<Q>,
    basis: Vec<usize>,
    ncols: usize,
    pivots: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Q {
        &self.t[r][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.t[r][c].recip();
        for x in self.t[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let nz: Vec<usize> = (0..=self.ncols)
            .filter(|&j| !self.t[r][j].is_zero())
            .collect();
        let prow: Vec<Q> = nz.iter().map(|&j| self.t[r][j].clone()).collect();
        for i in 0..self.t.len() {
            if i == r || self.t[i][c].is_zero() {
                continue;
            }
            let f = self.t[i][c].clone();
            for (&j, v) in nz.iter().zip(&prow) {
                let d = &f * v;
                self.t[i][j] -= d;
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (&j, v) in nz.iter().zip(&prow) {
                let d = &f * v;
                self.obj[j] -= d;
            }
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Runs simplex iterations on the current objective row; `allowed` limits
    /// entering columns. Returns false if unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Q)> = None;
            for r in 0..self.t.len() {
                let a = &self.t[r][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &best {
                    None => true,
                    Some((br, bv)) => {
                        ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

impl LinearProgram {
    pub fn new(num_vars: usize, objective: Vec<Q>) -> Self {
        assert_eq!(objective.len(), num_vars);
        LinearProgram {
            num_vars,
            objective,
            rows: Vec::new(),
        }
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, Q)>, rel: Relation, rhs: Q) {
        self.rows.push(Row { coeffs, rel, rhs });
    }

    pub fn solve(&self) -> LpOutcome {
        let n = self.num_vars;
        let m = self.rows.len();
        let slack_count = self.rows.iter().filter(|r| r.rel != Relation::Eq).count();
        let art0 = n + slack_count;
        let ncols = art0 + m;
        let mut t = vec![vec![Q::zero(); ncols + 1]; m];
        let mut flipped = vec![false; m];
        let mut s = n;
        for (i, row) in self.rows.iter().enumerate() {
            let flip = row.rhs.is_negative();
            flipped[i] = flip;
            let sign = if flip {
                -Q::from_integer(1.into())
            } else {
                Q::from_integer(1.into())
            };
            for (j, v) in &row.coeffs {
                t[i][*j] += v * &sign;
            }
            match row.rel {
                Relation::Eq => {}
                Relation::Le => {
                    t[i][s] = sign.clone();
                    s += 1;
                }
                Relation::Ge => {
                    t[i][s] = -sign.clone();
                    s += 1;
                }
            }
            t[i][art0 + i] = Q::from_integer(1.into());
            t[i][ncols] = &row.rhs * &sign;
        }
        // phase 1: minimise the artificial sum
        let mut obj = vec![Q::zero(); ncols + 1];
        for row in &t {
            for j in 0..art0 {
                obj[j] -= &row[j];
            }
            obj[ncols] -= &row[ncols];
        }
        let mut tab = Tableau {
            t,
            obj,
            basis: (art0..ncols).collect(),
            ncols,
            pivots: 0,
        };
        tab.optimize(art0);
        if !tab.obj[ncols].is_zero() {
            return LpOutcome::Infeasible;
        }
        // drive degenerate artificials out of the basis where possible
        for r in 0..m {
            if tab.basis[r] >= art0 {
                if let Some(j) = (0..art0).find(|&j| !tab.t[r][j].is_zero()) {
                    tab.pivot(r, j);
                }
            }
        }
        // phase 2
        let mut obj = vec![Q::zero(); ncols + 1];
        obj[..n].clone_from_slice(&self.objective);
        for r in 0..m {
            let b = tab.basis[r];
            let cb = if b < n {
                self.objective[b].clone()
            } else {
                Q::zero()
            };
            if cb.is_zero() {
                continue;
            }
            for (o, x) in obj.iter_mut().zip(&tab.t[r]) {
                if !x.is_zero() {
                    *o -= &cb * x;
                }
            }
        }
        tab.obj = obj;
        if !tab.optimize(art0) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Q::zero(); n];
        for r in 0..m {
            if tab.basis[r] < n {
                x[tab.basis[r]] = tab.rhs(r).clone();
            }
        }
        let value = -tab.obj[ncols].clone();
        let dual = (0..m)
            .map(|i| {
                let y = -tab.obj[art0 + i].clone();
                if flipped[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        LpOutcome::Optimal(LpSolution {
            x,
            value,
            dual,
            pivots: tab.pivots,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qf};

    #[test]
    fn small_maximisation() {
        // max 3x + 2y st x + y <= 4, x + 3y <= 6  → min -3x - 2y
        let mut lp = LinearProgram::new(2, vec![q(-3), q(-2)]);
        lp.add_row(vec![(0, q(1)), (1, q(1))], Relation::Le, q(4));
        lp.add_row(vec![(0, q(1)), (1, q(3))], Relation::Le, q(6));
        let LpOutcome::Optimal(s) = lp.solve() else {
            panic!()
        };
        assert_eq!(s.value, q(-12));
        assert_eq!(s.x, vec![q(4), q(0)]);
    }

    #[test]
    fn equality_with_fraction_and_dual() {
        // min a + b st 2a + 3b = 1
        let mut lp = LinearProgram::new(2, vec![q(1), q(1)]);
        lp.add_row(vec![(0, q(2)), (1, q(3))], Relation::Eq, q(1));
        let LpOutcome::Optimal(s) = lp.solve() else {
            panic!()
        };
        assert_eq!(s.value, qf(1, 3));
        assert_eq!(s.dual, vec![qf(1, 3)]);
    }

    #[test]
    fn infeasible_unbounded_redundant() {
        let mut lp = LinearProgram::new(1, vec![q(1)]);
        lp.add_row(vec![(0, q(1))], Relation::Eq, q(-1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
        let mut lp = LinearProgram::new(1, vec![q(-1)]);
        lp.add_row(vec![(0, q(1))], Relation::Ge, q(1));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
        // duplicated equality rows
        let mut lp = LinearProgram::new(2, vec![q(1), q(2)]);
        lp.add_row(vec![(0, q(1)), (1, q(1))], Relation::Eq, q(2));
        lp.add_row(vec![(0, q(2)), (1, q(2))], Relation::Eq, q(4));
        let LpOutcome::Optimal(s) = lp.solve() else {
            panic!()
        };
        assert_eq!(s.value, q(2));
        let by_dual: Q = s.dual[0].clone() * q(2) + s.dual[1].clone() * q(4);
        assert_eq!(by_dual, q(2));
    }

    #[test]
    fn negative_rhs_dual_sign() {
        // min x st -x = -3 → x = 3, dual y with y·(-3) = 3
        let mut lp = LinearProgram::new(1, vec![q(1)]);
        lp.add_row(vec![(0, q(-1))], Relation::Eq, q(-3));
        let LpOutcome::Optimal(s) = lp.solve() else {
            panic!()
        };
        assert_eq!(s.value, q(3));
        assert_eq!(s.dual, vec![q(-1)]);
    }
}
