//! Named constants and thresholds, evaluated exactly.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// `2(L+s)^7 + (L+s)^5`: threshold for `|I_{L,s,V}(N)| <= |D_{L,s}(N)|`.
pub fn t1_bound(l: u64, s: u64) -> BigUint {
    let m = big(l) + big(s);
    big(2) * m.pow(7) + m.pow(5)
}

/// `(12 s t^3)^t`.
pub fn a_const(s: u64, t: u32) -> BigUint {
    (big(12) * big(s) * big(t as u64).pow(3)).pow(t)
}

/// `(39 s^2 t^3)^t`.
pub fn b_const(s: u64, t: u32) -> BigUint {
    (big(39) * big(s).pow(2) * big(t as u64).pow(3)).pow(t)
}

/// `(10s)^5 (t+1)^4 (39 s^2 t^3)^{5t}`.
pub fn t3_bound(s: u64, t: u32) -> BigUint {
    (big(10) * big(s)).pow(5) * big(t as u64 + 1).pow(4) * b_const(s, t).pow(5)
}

/// `F(s,t) = 156 s^2 (t+1)^2 (39 s^2 t^3)^t`.
pub fn f_st(s: u64, t: u32) -> BigUint {
    big(156) * big(s).pow(2) * big(t as u64 + 1).pow(2) * b_const(s, t)
}

/// `F(s) = (10s - 2)(15s - 3) + 8s`.
pub fn f_s(s: u64) -> BigUint {
    big(10 * s - 2) * big(15 * s - 3) + big(8 * s)
}

/// `kappa(s) = (12s - 1)((s+1) + (s+2) + ... + (F(s)-1)) + 1`.
pub fn kappa_s(s: u64) -> BigUint {
    let hi = f_s(s) - 1u32;
    let lo = big(s + 1);
    // arithmetic series lo..=hi
    let count = &hi - &lo + 1u32;
    let sum = (&lo + &hi) * count / 2u32;
    big(12 * s - 1) * sum + 1u32
}

/// `(2^{t+4} s + s^2) t^t / t!`, the least `k_t` for the large-`k_t` map.
pub fn alt_kt_bound(s: u64, t: u32) -> BigRational {
    let num = (big(1) << (t + 4)) * big(s) + big(s).pow(2);
    let num = num * big(t as u64).pow(t);
    let fact: BigUint = (1..=t as u64).map(big).product();
    BigRational::new(BigInt::from(num), BigInt::from(fact))
}

/// Result of [`evaluate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundValue {
    Integer(BigUint),
    Rational(BigRational),
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Integer(n) => write!(f, "{n}"),
            BoundValue::Rational(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            BoundValue::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl Serialize for BoundValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Names accepted by [`evaluate`], with the arguments each one reads.
pub const BOUND_NAMES: &[(&str, &[&str])] = &[
    ("t1_bound", &["L", "s"]),
    ("t3_bound", &["s", "t"]),
    ("F_st", &["s", "t"]),
    ("F_s", &["s"]),
    ("kappa_s", &["s"]),
    ("A", &["s", "t"]),
    ("B", &["s", "t"]),
    ("alt_kt_bound", &["s", "t"]),
];

/// Arguments to [`evaluate`]; each bound reads the subset it needs.
#[derive(Clone, Copy, Debug, Default)]
pub struct BoundArgs {
    pub l: Option<u64>,
    pub s: Option<u64>,
    pub t: Option<u32>,
}

fn need<T: Copy + PartialOrd + From<u8>>(v: Option<T>, name: &str) -> Result<T> {
    match v {
        Some(x) if x >= T::from(1) => Ok(x),
        Some(_) => Err(Error::Domain(format!("argument {name} must be positive"))),
        None => Err(Error::Domain(format!("missing argument {name}"))),
    }
}

pub fn evaluate(name: &str, args: BoundArgs) -> Result<BoundValue> {
    use BoundValue::Integer;
    let s = || need(args.s, "s");
    let t = || need(args.t, "t");
    Ok(match name {
        "t1_bound" => Integer(t1_bound(need(args.l, "L")?, s()?)),
        "t3_bound" => Integer(t3_bound(s()?, t()?)),
        "F_st" => Integer(f_st(s()?, t()?)),
        "F_s" => Integer(f_s(s()?)),
        "kappa_s" => Integer(kappa_s(s()?)),
        "A" => Integer(a_const(s()?, t()?)),
        "B" => Integer(b_const(s()?, t()?)),
        "alt_kt_bound" => BoundValue::Rational(alt_kt_bound(s()?, t()?)),
        other => return Err(Error::UnknownName(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(t1_bound(3, 1), big(33792));
        assert_eq!(f_s(1), big(104));
        // brute-force sum 2 + 3 + ... + 103
        let sum: u64 = (2..=103).sum();
        assert_eq!(sum, 5355);
        assert_eq!(kappa_s(1), big(11 * sum + 1));
        assert_eq!(kappa_s(1), big(58906));
        assert_eq!(f_st(1, 1), big(24336));
        assert_eq!(a_const(1, 1), big(12));
        assert_eq!(b_const(1, 1), big(39));
        assert_eq!(a_const(1, 2), big(9216));
        assert_eq!(b_const(1, 2), big(97344));
    }

    #[test]
    fn kappa_matches_direct_sum() {
        for s in 1..=20u64 {
            let fs: u64 = (10 * s - 2) * (15 * s - 3) + 8 * s;
            let direct: u64 = (s + 1..fs).sum::<u64>() * (12 * s - 1) + 1;
            assert_eq!(kappa_s(s), big(direct), "s = {s}");
            assert!(kappa_s(s) < big(15 * s).pow(5), "s = {s}");
        }
    }

    #[test]
    fn a_below_b() {
        for s in 1..=10 {
            for t in 1..=10 {
                assert!(a_const(s, t) < b_const(s, t));
            }
        }
    }

    #[test]
    fn alt_bound_values() {
        // t = 2, s = 1: (64 + 1) * 4 / 2 = 130
        assert_eq!(alt_kt_bound(1, 2), BigRational::from_integer(130.into()));
        // t = 3, s = 1: (128 + 1) * 27 / 6 = 580.5
        assert_eq!(alt_kt_bound(1, 3), BigRational::new(1161.into(), 2.into()));
    }

    #[test]
    fn evaluate_by_name() {
        let args = BoundArgs { l: Some(3), s: Some(1), t: Some(1) };
        assert_eq!(evaluate("t1_bound", args).unwrap(), BoundValue::Integer(big(33792)));
        assert_eq!(evaluate("kappa_s", args).unwrap().to_string(), "58906");
        assert_eq!(evaluate("alt_kt_bound", BoundArgs { t: Some(3), ..args }).unwrap().to_string(), "1161/2");
        assert!(matches!(evaluate("gamma", args), Err(Error::UnknownName(_))));
        assert!(evaluate("t1_bound", BoundArgs { l: None, ..args }).is_err());
        assert!(evaluate("F_s", BoundArgs { s: Some(0), ..args }).is_err());
        for (name, _) in BOUND_NAMES {
            assert!(evaluate(name, args).is_ok(), "{name}");
        }
    }
}
