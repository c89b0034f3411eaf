//! Exact rational helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn bigq(n: &BigInt) -> Q {
    Q::from_integer(n.clone())
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn is_integral(x: &Q) -> bool {
    x.denom().is_one()
}

/// Exact integer `x` as i64, if it fits.
pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn lcm_denominators<'a, I: IntoIterator<Item = &'a Q>>(xs: I) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scale a nonzero rational vector to its primitive integer representative with
/// first nonzero entry positive.
pub fn primitive_integer(v: &[Q]) -> Vec<BigInt> {
    let l = lcm_denominators(v.iter());
    let ints: Vec<BigInt> = v.iter().map(|x| (x * bigq(&l)).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = ints
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| {
            if x.is_negative() {
                -BigInt::one()
            } else {
                BigInt::one()
            }
        })
        .unwrap_or_else(BigInt::one);
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

/// Two-sided rational bracket `[lo, hi]` around `2^x` with `hi/lo - 1 <= 1e-6`.
/// Both sides are verified exactly: `lo^q <= 2^p <= hi^q` for `x = p/q`.
pub fn pow2_bracket(x: &Q) -> (Q, Q) {
    if x.is_integer() {
        let e = x.numer().to_i64().expect("exponent fits in i64");
        let v = pow2_int(e);
        return (v.clone(), v);
    }
    let p = x.numer().clone();
    let qd = x
        .denom()
        .to_u32()
        .expect("exponent denominator fits in u32");
    let approx = 2f64.powf(x.to_f64().unwrap_or(0.0));
    let scale = 1e-7;
    let mut lo = Q::from_float(approx * (1.0 - scale)).unwrap_or_else(|| q(0));
    let mut hi = Q::from_float(approx * (1.0 + scale)).unwrap_or_else(|| q(1));
    let two_p = pow2_int(p.to_i64().expect("exponent numerator fits in i64"));
    // Widen until the exact inequalities hold; float error is tiny so this
    // loop runs at most a couple of times.
    let shrink = qf(999_999, 1_000_000);
    let grow = qf(1_000_001, 1_000_000);
    while num_traits::pow(lo.clone(), qd as usize) > two_p {
        lo *= &shrink;
    }
    while num_traits::pow(hi.clone(), qd as usize) < two_p {
        hi *= &grow;
    }
    (lo, hi)
}

fn pow2_int(e: i64) -> Q {
    let base = Q::from_integer(BigInt::from(2));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base, (-e) as usize).recip()
    }
}

pub fn abs_sum<'a, I: IntoIterator<Item = &'a Q>>(xs: I) -> Q {
    xs.into_iter().fold(Q::zero(), |acc, x| acc + x.abs())
}

pub mod serde_q {
    use super::{fmt_q, parse_q, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

pub mod serde_opt_q {
    use super::{fmt_q, Q};
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_str(&fmt_q(x)),
            None => s.serialize_none(),
        }
    }
}

pub mod serde_vec_q {
    use super::{fmt_q, Q};
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&fmt_q(x))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse() {
        assert_eq!(fmt_q(&qf(6, 4)), "3/2");
        assert_eq!(fmt_q(&q(-2)), "-2");
        assert_eq!(parse_q("3/2"), Some(qf(3, 2)));
        assert_eq!(parse_q(" -7 "), Some(q(-7)));
        assert_eq!(parse_q("1/0"), None);
    }

    #[test]
    fn primitive_vector() {
        let v = vec![qf(-1, 2), q(0), qf(3, 4)];
        let p = primitive_integer(&v);
        assert_eq!(p, vec![BigInt::from(2), BigInt::from(0), BigInt::from(-3)]);
    }

    #[test]
    fn bracket_integer_and_fractional() {
        let (lo, hi) = pow2_bracket(&q(-3));
        assert_eq!(lo, qf(1, 8));
        assert_eq!(hi, qf(1, 8));
        let (lo, hi) = pow2_bracket(&qf(1, 2));
        assert!(&lo * &lo <= q(2) && &hi * &hi >= q(2));
        assert!(&hi / &lo - q(1) <= qf(1, 1_000_000));
        let (lo, hi) = pow2_bracket(&qf(-5, 3));
        let target = qf(1, 32);
        assert!(
            num_traits::pow(lo.clone(), 3) <= target && num_traits::pow(hi.clone(), 3) >= target
        );
    }
}
