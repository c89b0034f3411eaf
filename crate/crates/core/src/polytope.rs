//! Vertex enumeration for `{z ∈ W : ‖z‖₁ ≤ 1}` where `W` is the column span of
//! an integer matrix.
//!
//! The vertices of that polytope are exactly the normalised elementary vectors
//! (circuits) of `W`: nonzero vectors of `W` with inclusion-minimal support.
//! Such a vector is pinned down, up to scale, by `r − 1` independent
//! coordinates of the basis matrix set to zero, where `r = dim W`.

use crate::arith::{primitive_integer, Q};
use crate::linalg::{independent_columns, rref, to_rational};
use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeSet;

/// Primitive integer circuits of the column span of `m`, one per `±` pair,
/// sorted for determinism.
pub fn circuits(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let basis_cols = independent_columns(m);
    let r = basis_cols.len();
    if r == 0 {
        return Vec::new();
    }
    let g = to_rational(&m.select_columns(&basis_cols));
    let n = m.rows();
    let mut found = BTreeSet::new();
    let mut chosen = Vec::with_capacity(r);
    search(&g, n, r, 0, &mut chosen, &mut found);
    found.into_iter().collect()
}

fn rank_of(g: &[Vec<Q>], rows: &[usize], r: usize) -> usize {
    rref(rows.iter().map(|&i| g[i].clone()).collect(), r).rank()
}

fn search(
    g: &[Vec<Q>],
    n: usize,
    r: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    found: &mut BTreeSet<Vec<BigInt>>,
) {
    if chosen.len() == r - 1 {
        let e = rref(chosen.iter().map(|&i| g[i].clone()).collect(), r);
        let kernel = e.kernel();
        debug_assert_eq!(kernel.len(), 1);
        let y = &kernel[0];
        let w: Vec<Q> = g
            .iter()
            .map(|row| row.iter().zip(y).fold(Q::zero(), |acc, (a, b)| acc + a * b))
            .collect();
        found.insert(primitive_integer(&w));
        return;
    }
    let need = r - 1 - chosen.len();
    for i in start..n {
        if n - i < need {
            break;
        }
        chosen.push(i);
        if rank_of(g, chosen, r) == chosen.len() {
            search(g, n, r, i + 1, chosen, found);
        }
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[Vec<BigInt>]) -> Vec<Vec<i64>> {
        v.iter()
            .map(|c| c.iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect()
    }

    #[test]
    fn line_and_plane() {
        let m = IntMatrix::from_rows(&[vec![2], vec![-4]]);
        assert_eq!(ints(&circuits(&m)), vec![vec![1, -2]]);
        // W = {x + y + z = 0} in ℚ³: circuits are the three differences e_i − e_j
        let m = IntMatrix::from_rows(&[vec![1, 0], vec![-1, 1], vec![0, -1]]);
        let c = ints(&circuits(&m));
        assert_eq!(c.len(), 3);
        for v in &c {
            assert_eq!(v.iter().sum::<i64>(), 0);
            assert_eq!(v.iter().filter(|x| **x != 0).count(), 2);
        }
    }

    #[test]
    fn zero_space() {
        assert!(circuits(&IntMatrix::zeros(3, 2)).is_empty());
    }

    #[test]
    fn supports_are_minimal() {
        let m =
            IntMatrix::from_rows(&[vec![1, 2, 0], vec![0, 1, 1], vec![1, 0, -2], vec![3, 1, 2]]);
        let cs = circuits(&m);
        let supports: Vec<Vec<usize>> = cs
            .iter()
            .map(|c| (0..c.len()).filter(|&i| !c[i].is_zero()).collect())
            .collect();
        for (i, a) in supports.iter().enumerate() {
            for (j, b) in supports.iter().enumerate() {
                if i != j {
                    assert!(!a.iter().all(|x| b.contains(x)), "{a:?} inside {b:?}");
                }
            }
        }
    }
}
