//! Smith normal form over the integers.
//!
//! Pivoting always picks the nonzero entry of smallest absolute value in the
//! remaining block. The elimination runs first in `i64` with checked
//! arithmetic and restarts in `BigInt` on overflow, so results are always
//! exact.

use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, One, Signed, Zero};

trait SnfRing: Clone + Integer + Signed + CheckedMul + CheckedSub + From<i64> {}
impl SnfRing for i64 {}
impl SnfRing for BigInt {}

struct Work<T> {
    a: Vec<Vec<T>>,
    p: Option<Vec<Vec<T>>>,
    q: Option<Vec<Vec<T>>>,
}

impl<T: SnfRing> Work<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(p) = &mut self.p {
            p.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(q) = &mut self.q {
            for row in q.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// row_i -= k * row_j
    fn row_axpy(&mut self, i: usize, j: usize, k: &T) -> Option<()> {
        let (src, dst) = two(&mut self.a, j, i);
        axpy(dst, src, k)?;
        if let Some(p) = &mut self.p {
            let (src, dst) = two(p, j, i);
            axpy(dst, src, k)?;
        }
        Some(())
    }

    /// col_i -= k * col_j
    fn col_axpy(&mut self, i: usize, j: usize, k: &T) -> Option<()> {
        for row in &mut self.a {
            let v = row[i].checked_sub(&k.checked_mul(&row[j])?)?;
            row[i] = v;
        }
        if let Some(q) = &mut self.q {
            for row in q.iter_mut() {
                let v = row[i].checked_sub(&k.checked_mul(&row[j])?)?;
                row[i] = v;
            }
        }
        Some(())
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -x.clone();
        }
        if let Some(p) = &mut self.p {
            for x in &mut p[i] {
                *x = -x.clone();
            }
        }
    }
}

fn two<T>(v: &mut [Vec<T>], src: usize, dst: usize) -> (&Vec<T>, &mut Vec<T>) {
    assert_ne!(src, dst);
    if src < dst {
        let (a, b) = v.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = v.split_at_mut(src);
        (&b[0], &mut a[dst])
    }
}

fn axpy<T: SnfRing>(dst: &mut [T], src: &[T], k: &T) -> Option<()> {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = d.checked_sub(&k.checked_mul(s)?)?;
        }
    }
    Some(())
}

fn identity<T: SnfRing>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect()
}

/// Returns the diagonal (length min(m, n), trailing zeros included) or None on
/// overflow.
fn reduce<T: SnfRing>(w: &mut Work<T>, m: usize, n: usize) -> Option<Vec<T>> {
    let k = m.min(n);
    for t in 0..k {
        // smallest nonzero pivot in the block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let v = &w.a[i][j];
                if !v.is_zero() {
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => v.abs() < w.a[bi][bj].abs(),
                    };
                    if better {
                        best = Some((i, j));
                        if v.abs().is_one() {
                            break;
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        if pi != t {
            w.swap_rows(t, pi);
        }
        if pj != t {
            w.swap_cols(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let qt = w.a[i][t].div_floor(&w.a[t][t]);
                w.row_axpy(i, t, &qt)?;
                if !w.a[i][t].is_zero() {
                    w.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let qt = w.a[t][j].div_floor(&w.a[t][t]);
                w.col_axpy(j, t, &qt)?;
                if !w.a[t][j].is_zero() {
                    w.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block
            let mut fix = None;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    if !w.a[i][j].is_multiple_of(&w.a[t][t]) {
                        fix = Some(i);
                        break 'outer;
                    }
                }
            }
            match fix {
                Some(i) => {
                    let minus_one = -T::one();
                    w.row_axpy(t, i, &minus_one)?;
                }
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    Some((0..k).map(|i| w.a[i][i].clone()).collect())
}

fn to_big(v: Vec<Vec<i64>>) -> Vec<Vec<BigInt>> {
    v.into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect()
}

/// Nonzero invariant factors d_1 | d_2 | ... of `m` (all positive).
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let (r, c) = (m.rows(), m.cols());
    let mut w: Work<i64> = Work {
        a: m.to_rows(),
        p: None,
        q: None,
    };
    let diag: Vec<BigInt> = match reduce(&mut w, r, c) {
        Some(d) => d.into_iter().map(BigInt::from).collect(),
        None => {
            let mut w: Work<BigInt> = Work {
                a: to_big(m.to_rows()),
                p: None,
                q: None,
            };
            reduce(&mut w, r, c).expect("BigInt arithmetic cannot overflow")
        }
    };
    diag.into_iter().filter(|d| !d.is_zero()).collect()
}

pub fn rank(m: &IntMatrix) -> usize {
    invariant_factors(m).len()
}

/// Full Smith decomposition `P * A * Q = D` with unimodular `P`, `Q`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero diagonal entries, in divisibility order.
    pub diag: Vec<BigInt>,
    pub p: Vec<Vec<BigInt>>,
    pub q: Vec<Vec<BigInt>>,
}

impl SmithForm {
    pub fn new(m: &IntMatrix) -> Self {
        let (r, c) = (m.rows(), m.cols());
        let mut w: Work<i64> = Work {
            a: m.to_rows(),
            p: Some(identity(r)),
            q: Some(identity(c)),
        };
        let (diag, p, q) = match reduce(&mut w, r, c) {
            Some(d) => (
                d.into_iter().map(BigInt::from).collect::<Vec<_>>(),
                to_big(w.p.take().unwrap()),
                to_big(w.q.take().unwrap()),
            ),
            None => {
                let mut w: Work<BigInt> = Work {
                    a: to_big(m.to_rows()),
                    p: Some(identity(r)),
                    q: Some(identity(c)),
                };
                let d = reduce(&mut w, r, c).expect("BigInt arithmetic cannot overflow");
                (d, w.p.take().unwrap(), w.q.take().unwrap())
            }
        };
        let diag = diag.into_iter().filter(|d| !d.is_zero()).collect();
        SmithForm {
            rows: r,
            cols: c,
            diag,
            p,
            q,
        }
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    fn transform(&self, b: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(b.len(), self.rows);
        self.p
            .iter()
            .map(|row| row.iter().zip(b).map(|(x, y)| x * y).sum())
            .collect()
    }

    /// Whether `b` lies in the rational column span.
    pub fn in_rational_span(&self, b: &[BigInt]) -> bool {
        let c = self.transform(b);
        c[self.rank()..].iter().all(|x| x.is_zero())
    }

    /// An integer solution of `A x = b`, if one exists.
    pub fn solve_integer(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = self.transform(b);
        let r = self.rank();
        if !c[r..].iter().all(|x| x.is_zero()) {
            return None;
        }
        let mut y = vec![BigInt::zero(); self.cols];
        for i in 0..r {
            let (qt, rem) = c[i].div_rem(&self.diag[i]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = qt;
        }
        Some(
            self.q
                .iter()
                .map(|row| row.iter().zip(&y).map(|(x, y)| x * y).sum())
                .collect(),
        )
    }

    /// Smallest `k > 0` with `k * b` in the integer column lattice, or None if
    /// `b` is not even in the rational span.
    pub fn lattice_multiplier(&self, b: &[BigInt]) -> Option<BigInt> {
        let c = self.transform(b);
        let r = self.rank();
        if !c[r..].iter().all(|x| x.is_zero()) {
            return None;
        }
        let mut k = BigInt::one();
        for i in 0..r {
            let g = self.diag[i].gcd(&c[i]);
            let need = &self.diag[i] / g;
            k = k.lcm(&need);
        }
        Some(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn classic_example() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(invariant_factors(&m), big(&[2, 6, 12]));
    }

    #[test]
    fn transforms_reconstruct_diagonal() {
        let m = IntMatrix::from_rows(&[vec![3, 1, 4], vec![1, 5, 9], vec![2, 6, 5], vec![0, 0, 0]]);
        let s = SmithForm::new(&m);
        let a: Vec<Vec<BigInt>> = m.to_rows().into_iter().map(|r| big(&r)).collect();
        let pa: Vec<Vec<BigInt>> =
            s.p.iter()
                .map(|prow| {
                    (0..3)
                        .map(|j| (0..4).map(|k| &prow[k] * &a[k][j]).sum())
                        .collect()
                })
                .collect();
        let paq: Vec<Vec<BigInt>> = pa
            .iter()
            .map(|row| {
                (0..3)
                    .map(|j| (0..3).map(|k| &row[k] * &s.q[k][j]).sum())
                    .collect()
            })
            .collect();
        for i in 0..4 {
            for j in 0..3 {
                let expect = if i == j && i < s.rank() {
                    s.diag[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(paq[i][j], expect);
            }
        }
        for w in s.diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn lattice_membership() {
        // image is generated by (2, 0) and (0, 3)
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = SmithForm::new(&m);
        assert!(s.solve_integer(&big(&[4, 3])).is_some());
        assert!(s.solve_integer(&big(&[1, 0])).is_none());
        assert_eq!(s.lattice_multiplier(&big(&[1, 1])), Some(BigInt::from(6)));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big_entry = i64::MAX / 3;
        let m = IntMatrix::from_rows(&[
            vec![big_entry, big_entry - 1],
            vec![big_entry - 2, big_entry - 7],
        ]);
        // determinant computed exactly
        let f = invariant_factors(&m);
        let det = BigInt::from(big_entry) * BigInt::from(big_entry - 7)
            - BigInt::from(big_entry - 1) * BigInt::from(big_entry - 2);
        let prod: BigInt = f.iter().product();
        assert_eq!(prod, det.abs());
    }
}
