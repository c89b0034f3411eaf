//! Exact linear algebra over the rationals and over prime fields.

use crate::arith::Q;
use crate::matrix::IntMatrix;
use num_traits::{One, Zero};

/// Dense rational matrix in reduced row echelon form.
#[derive(Debug, Clone)]
pub struct Rref {
    pub rows: Vec<Vec<Q>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

pub fn to_rational(m: &IntMatrix) -> Vec<Vec<Q>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|&x| Q::from_integer(x.into()))
                .collect()
        })
        .collect()
}

pub fn rref(mut a: Vec<Vec<Q>>, cols: usize) -> Rref {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Rref {
        rows: a,
        pivots,
        cols,
    }
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the null space of the original matrix.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let free: Vec<usize> = (0..self.cols)
            .filter(|c| !self.pivots.contains(c))
            .collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect()
    }
}

/// Solve `A x = b` over the rationals (any solution), or None.
pub fn solve(a: &[Vec<Q>], b: &[Q], cols: usize) -> Option<Vec<Q>> {
    let aug: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let e = rref(aug, cols + 1);
    if e.pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        x[p] = row[cols].clone();
    }
    Some(x)
}

pub fn rank_q(m: &IntMatrix) -> usize {
    rref(to_rational(m), m.cols()).rank()
}

/// Indices of a maximal set of linearly independent columns (greedy, in order).
pub fn independent_columns(m: &IntMatrix) -> Vec<usize> {
    rref(to_rational(m), m.cols()).pivots
}

pub fn mat_vec_q(a: &IntMatrix, x: &[Q]) -> Vec<Q> {
    (0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .zip(x)
                .filter(|(c, _)| **c != 0)
                .fold(Q::zero(), |acc, (c, v)| {
                    acc + Q::from_integer((*c).into()) * v
                })
        })
        .collect()
}

// ---- prime fields ----

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn reduce_mod(m: &IntMatrix, p: u64) -> Vec<Vec<u64>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|&x| x.rem_euclid(p as i64) as u64)
                .collect()
        })
        .collect()
}

/// Reduced row echelon form over F_p; returns (rows, pivots).
pub fn rref_mod(mut a: Vec<Vec<u64>>, cols: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank_mod(m: &IntMatrix, p: u64) -> usize {
    rref_mod(reduce_mod(m, p), m.cols(), p).1.len()
}

pub fn kernel_mod(a: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let (rows, pivots) = rref_mod(a, cols, p);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qf};

    #[test]
    fn kernel_and_solve() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let e = rref(to_rational(&m), 3);
        assert_eq!(e.rank(), 1);
        for v in e.kernel() {
            assert!(mat_vec_q(&m, &v).iter().all(|x| x.is_zero()));
        }
        let a = to_rational(&IntMatrix::from_rows(&[vec![2, 3]]));
        let x = solve(&a, &[q(1)], 2).unwrap();
        assert_eq!(x, vec![qf(1, 2), q(0)]);
        assert!(solve(&to_rational(&m), &[q(1), q(1)], 3).is_none());
    }

    #[test]
    fn mod_p_rank() {
        let m = IntMatrix::from_rows(&[vec![2], vec![0]]);
        assert_eq!(rank_mod(&m, 2), 0);
        assert_eq!(rank_mod(&m, 3), 1);
        let k = kernel_mod(reduce_mod(&IntMatrix::from_rows(&[vec![1, 1]]), 2), 2, 2);
        assert_eq!(k, vec![vec![1, 1]]);
    }
}
