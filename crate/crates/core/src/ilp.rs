//! ℓ¹ minimisation `min ‖x‖₁ s.t. M x = b` over ℚ (split LP) and over ℤ
//! (depth-first branch-and-bound on the LP relaxation).

use crate::arith::{bigq, Q};
use crate::lp::{LinearProgram, LpOutcome, LpSolution, Relation};
use crate::matrix::IntMatrix;
use crate::snf::SmithForm;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Branching restriction `x_var ≤ value` (upper) or `x_var ≥ value`.
#[derive(Debug, Clone)]
pub struct Bound {
    pub var: usize,
    pub upper: bool,
    pub value: BigInt,
}

/// Solution of the split LP translated back to `x = x⁺ − x⁻`.
#[derive(Debug, Clone, PartialEq)]
pub struct L1Solution {
    pub x: Vec<Q>,
    pub value: Q,
    /// Multipliers for the rows of `M` (branching rows excluded).
    pub dual: Vec<Q>,
}

/// LP relaxation of `min ‖x‖₁, M x = b` with optional branching bounds.
/// Returns None when infeasible.
pub fn l1_lp(m: &IntMatrix, b: &[Q], bounds: &[Bound]) -> Option<L1Solution> {
    let n = m.cols();
    let one = Q::one();
    let mut lp = LinearProgram::new(2 * n, vec![one.clone(); 2 * n]);
    for i in 0..m.rows() {
        let mut coeffs = Vec::new();
        for j in 0..n {
            let v = m.get(i, j);
            if v != 0 {
                coeffs.push((j, Q::from_integer(v.into())));
                coeffs.push((n + j, Q::from_integer((-v).into())));
            }
        }
        lp.add_row(coeffs, Relation::Eq, b[i].clone());
    }
    for bd in bounds {
        let coeffs = vec![(bd.var, one.clone()), (n + bd.var, -one.clone())];
        let rel = if bd.upper { Relation::Le } else { Relation::Ge };
        lp.add_row(coeffs, rel, bigq(&bd.value));
    }
    match lp.solve() {
        LpOutcome::Optimal(LpSolution {
            x, value, mut dual, ..
        }) => {
            dual.truncate(m.rows());
            let x = (0..n).map(|j| &x[j] - &x[n + j]).collect();
            Some(L1Solution { x, value, dual })
        }
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("l1 objective is bounded below by zero"),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IlpSolution {
    pub x: Vec<BigInt>,
    pub value: BigInt,
    /// LP solves performed (one per explored node).
    pub nodes: usize,
    pub root_bound: Q,
    /// False when the node cap stopped the search before the tree was exhausted.
    pub exhausted: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum IlpOutcome {
    Solved(IlpSolution),
    /// `b` is not in the integer column lattice of `M`.
    NoIntegerSolution,
}

fn l1_big(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).sum()
}

fn ceil_q(x: &Q) -> BigInt {
    let (d, r) = x.numer().div_mod_floor(x.denom());
    if r.is_zero() {
        d
    } else {
        d + 1
    }
}

/// Integer ℓ¹ minimisation. The first incumbent is the Smith-form lattice
/// solution, which also bounds every coordinate of the optimum by its norm.
pub fn l1_ilp(m: &IntMatrix, b: &[BigInt], node_cap: usize) -> IlpOutcome {
    let snf = SmithForm::new(m);
    let Some(start) = snf.solve_integer(b) else {
        return IlpOutcome::NoIntegerSolution;
    };
    let bq: Vec<Q> = b.iter().map(bigq).collect();
    let mut best_val = l1_big(&start);
    let mut best = start;
    let mut nodes = 0usize;
    let mut root_bound = None;
    let mut stack: Vec<Vec<Bound>> = vec![Vec::new()];
    while let Some(bounds) = stack.pop() {
        if nodes >= node_cap {
            return IlpOutcome::Solved(IlpSolution {
                x: best,
                value: best_val,
                nodes,
                root_bound: root_bound.unwrap_or_else(Q::zero),
                exhausted: false,
            });
        }
        nodes += 1;
        let Some(sol) = l1_lp(m, &bq, &bounds) else {
            continue;
        };
        if root_bound.is_none() {
            root_bound = Some(sol.value.clone());
        }
        if ceil_q(&sol.value) >= best_val {
            continue;
        }
        match sol.x.iter().position(|v| !v.is_integer()) {
            None => {
                best = sol.x.iter().map(|v| v.to_integer()).collect();
                best_val = l1_big(&best);
            }
            Some(j) => {
                let fl = sol.x[j].floor().to_integer();
                let mut up = bounds.clone();
                up.push(Bound {
                    var: j,
                    upper: false,
                    value: &fl + 1,
                });
                let mut down = bounds;
                down.push(Bound {
                    var: j,
                    upper: true,
                    value: fl,
                });
                stack.push(up);
                stack.push(down);
            }
        }
    }
    IlpOutcome::Solved(IlpSolution {
        x: best,
        value: best_val,
        nodes,
        root_bound: root_bound.unwrap_or_else(Q::zero),
        exhausted: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qf};

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn lp_relaxation_is_fractional() {
        let m = IntMatrix::from_rows(&[vec![2, 3]]);
        let s = l1_lp(&m, &[q(1)], &[]).unwrap();
        assert_eq!(s.value, qf(1, 3));
        assert_eq!(s.x, vec![q(0), qf(1, 3)]);
    }

    #[test]
    fn integer_optimum_beats_lattice_start() {
        // 2x + 3y = 1 has integer optimum (-1, 1) of norm 2
        let m = IntMatrix::from_rows(&[vec![2, 3]]);
        let IlpOutcome::Solved(s) = l1_ilp(&m, &big(&[1]), 1000) else {
            panic!()
        };
        assert_eq!(s.value, BigInt::from(2));
        assert!(s.exhausted);
        assert_eq!(s.root_bound, qf(1, 3));
    }

    #[test]
    fn lattice_obstruction() {
        let m = IntMatrix::from_rows(&[vec![2]]);
        assert_eq!(l1_ilp(&m, &big(&[1]), 10), IlpOutcome::NoIntegerSolution);
        let IlpOutcome::Solved(s) = l1_ilp(&m, &big(&[4]), 10) else {
            panic!()
        };
        assert_eq!(s.x, big(&[2]));
    }

    #[test]
    fn cap_keeps_incumbent() {
        let m = IntMatrix::from_rows(&[vec![5, 7, 11]]);
        let IlpOutcome::Solved(s) = l1_ilp(&m, &big(&[1]), 1) else {
            panic!()
        };
        assert!(!s.exhausted);
        assert_eq!(
            m.mul_vec(
                &s.x.iter()
                    .map(|x| i64::try_from(x).unwrap())
                    .collect::<Vec<_>>()
            ),
            vec![1]
        );
    }
}
