//! Sparse exact chains and cochains carrying the ℓ¹ norm.

use crate::arith::{abs_sum, fmt_q, is_integral, parse_q, q, Q};
use crate::error::{Error, Result};
use crate::linalg::mat_vec_q;
use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A chain (or cochain, by the same data) of a fixed degree. Coefficients are
/// keyed by basis index and never stored as zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub degree: usize,
    coeffs: BTreeMap<usize, Q>,
    integral: bool,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Chain {
            degree,
            coeffs: BTreeMap::new(),
            integral: true,
        }
    }

    pub fn from_pairs(degree: usize, pairs: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut c = Chain::zero(degree);
        for (k, v) in pairs {
            c.add(k, &v);
        }
        c
    }

    pub fn from_ints(degree: usize, pairs: &[(usize, i64)]) -> Self {
        Chain::from_pairs(degree, pairs.iter().map(|&(k, v)| (k, q(v))))
    }

    pub fn from_dense(degree: usize, v: &[Q]) -> Self {
        Chain::from_pairs(degree, v.iter().cloned().enumerate())
    }

    pub fn from_dense_int(degree: usize, v: &[i64]) -> Self {
        Chain::from_pairs(degree, v.iter().map(|&x| q(x)).enumerate())
    }

    pub fn from_dense_big(degree: usize, v: &[BigInt]) -> Self {
        Chain::from_pairs(
            degree,
            v.iter().map(|x| Q::from_integer(x.clone())).enumerate(),
        )
    }

    pub fn add(&mut self, k: usize, v: &Q) {
        if v.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_insert_with(Q::zero);
        *e += v;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
        self.integral = self.coeffs.values().all(is_integral);
    }

    pub fn get(&self, k: usize) -> Q {
        self.coeffs.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.integral
    }

    pub fn l1_norm(&self) -> Q {
        abs_sum(self.coeffs.values())
    }

    pub fn scale(&self, k: &Q) -> Chain {
        Chain::from_pairs(self.degree, self.coeffs.iter().map(|(i, v)| (*i, v * k)))
    }

    pub fn plus(&self, other: &Chain) -> Chain {
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add(*k, v);
        }
        out
    }

    pub fn minus(&self, other: &Chain) -> Chain {
        self.plus(&other.scale(&q(-1)))
    }

    pub fn to_dense(&self, n: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); n];
        for (k, x) in &self.coeffs {
            v[*k] = x.clone();
        }
        v
    }

    /// Integer coefficients as `BigInt`, if the chain is integral.
    pub fn to_dense_big(&self, n: usize) -> Option<Vec<BigInt>> {
        if !self.integral {
            return None;
        }
        let mut v = vec![BigInt::zero(); n];
        for (k, x) in &self.coeffs {
            v[*k] = x.to_integer();
        }
        Some(v)
    }

    pub fn to_dense_i64(&self, n: usize) -> Option<Vec<i64>> {
        self.to_dense_big(n)?.iter().map(|x| x.to_i64()).collect()
    }

    /// `M · self` where the columns of `M` index this chain's basis.
    pub fn apply(&self, m: &IntMatrix, degree: usize) -> Chain {
        Chain::from_dense(degree, &mat_vec_q(m, &self.to_dense(m.cols())))
    }

    pub fn max_abs(&self) -> Q {
        self.coeffs
            .values()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Q::zero)
    }
}

pub fn l1_norm(c: &Chain) -> Q {
    c.l1_norm()
}

/// Wire form: `{"degree":1,"coeffs":{"a":2}}`. Coefficients may be JSON
/// integers or `"p/q"` strings; output always uses strings for non-integers.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ChainJson {
    pub degree: usize,
    pub coeffs: BTreeMap<String, serde_json::Value>,
}

impl ChainJson {
    pub fn from_chain(c: &Chain, name: impl Fn(usize) -> String) -> Self {
        let coeffs = c
            .iter()
            .map(|(k, v)| {
                let val = match v.to_integer().to_i64() {
                    Some(i) if v.is_integer() => serde_json::Value::from(i),
                    _ => serde_json::Value::from(fmt_q(v)),
                };
                (name(k), val)
            })
            .collect();
        ChainJson {
            degree: c.degree,
            coeffs,
        }
    }

    pub fn to_chain(&self, index: impl Fn(&str) -> Option<usize>) -> Result<Chain> {
        let mut c = Chain::zero(self.degree);
        for (name, val) in &self.coeffs {
            let k = index(name).ok_or_else(|| Error::DanglingReference {
                kind: "cell",
                id: name.clone(),
            })?;
            let x = match val {
                serde_json::Value::Number(n) => n.as_i64().map(q).ok_or_else(|| {
                    Error::InvalidInput(format!("coefficient {n} is not an integer"))
                })?,
                serde_json::Value::String(s) => {
                    parse_q(s).ok_or_else(|| Error::InvalidInput(format!("bad rational {s:?}")))?
                }
                other => return Err(Error::InvalidInput(format!("bad coefficient {other}"))),
            };
            c.add(k, &x);
        }
        Ok(c)
    }
}

/// Sum of integer entries ∑|x| for plain vectors.
pub fn l1_int(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qf;
    use proptest::prelude::*;

    #[test]
    fn norm_examples() {
        assert_eq!(Chain::zero(2).l1_norm(), q(0));
        assert_eq!(Chain::from_ints(2, &[(0, 3), (1, -2)]).l1_norm(), q(5));
        let k = 7;
        let c = Chain::from_pairs(1, (0..k).map(|i| (i, q(if i % 2 == 0 { 1 } else { -1 }))));
        assert_eq!(c.l1_norm(), q(k as i64));
    }

    #[test]
    fn zero_coefficients_dropped() {
        let mut c = Chain::from_ints(1, &[(0, 2), (1, 0)]);
        assert_eq!(c.support(), vec![0]);
        c.add(0, &q(-2));
        assert!(c.is_zero());
        c.add(3, &qf(1, 2));
        assert!(!c.is_integral());
    }

    fn chain_strategy() -> impl Strategy<Value = Chain> {
        proptest::collection::vec((-20i64..20, 1i64..5), 6)
            .prop_map(|v| Chain::from_pairs(1, v.into_iter().map(|(n, d)| qf(n, d)).enumerate()))
    }

    proptest! {
        #[test]
        fn triangle_inequality_and_homogeneity(a in chain_strategy(), b in chain_strategy(), k in -9i64..9) {
            prop_assert!(a.plus(&b).l1_norm() <= a.l1_norm() + b.l1_norm());
            prop_assert_eq!(a.scale(&q(k)).l1_norm(), q(k.abs()) * a.l1_norm());
            prop_assert_eq!(a.l1_norm().is_zero(), a.is_zero());
        }
    }
}
