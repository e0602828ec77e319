//! Two-coin Frobenius problem: `ax + by = n` over nonnegative integers.
//!
//! Solutions are found by extended Euclid rather than search, so `n` may be
//! astronomically large. The canonical solution is always the one with the
//! least admissible `x`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A nonnegative solution `(x, y)` of `ax + by = n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobSolution {
    pub x: BigUint,
    pub y: BigUint,
}

impl Serialize for FrobSolution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("FrobSolution", 2)?;
        st.serialize_field("x", &self.x.to_string())?;
        st.serialize_field("y", &self.y.to_string())?;
        st.end()
    }
}

fn no_solution(a: &BigUint, b: &BigUint, n: &BigUint) -> Error {
    Error::NoSolution {
        a: a.to_string(),
        b: b.to_string(),
        n: n.to_string(),
    }
}

/// `ab - a - b`, the largest integer not of the form `ax + by`.
pub fn frobenius_number(a: &BigUint, b: &BigUint) -> Result<BigUint> {
    if *a < BigUint::from(2u32) || *b < BigUint::from(2u32) {
        return Err(Error::Domain("frobenius_number: need a, b >= 2".into()));
    }
    if !a.gcd(b).is_one() {
        return Err(Error::Domain(format!(
            "frobenius_number: gcd({a}, {b}) != 1, Frobenius number undefined"
        )));
    }
    Ok(a * b - a - b)
}

/// Inverse of `a` modulo `m` for coprime `a, m` (`m >= 1`).
fn mod_inverse(a: &BigUint, m: &BigUint) -> BigUint {
    if m.is_one() {
        return BigUint::zero();
    }
    let ai = BigInt::from_biguint(Sign::Plus, a.clone());
    let mi = BigInt::from_biguint(Sign::Plus, m.clone());
    let eg = ai.extended_gcd(&mi);
    debug_assert!(eg.gcd.is_one());
    eg.x.mod_floor(&mi)
        .to_biguint()
        .expect("mod_floor is nonnegative")
}

/// Least `x >= 0` with `ax ≡ n (mod b)`, when `gcd(a, b) | n`.
fn least_x(a: &BigUint, b: &BigUint, n: &BigUint) -> Option<BigUint> {
    let g = a.gcd(b);
    if !(n % &g).is_zero() {
        return None;
    }
    let (a1, b1, n1) = (a / &g, b / &g, n / &g);
    Some((n1 % &b1) * mod_inverse(&(&a1 % &b1), &b1) % &b1)
}

/// The solution of `ax + by = n` with least `x`.
///
/// Sylvester's theorem guarantees a solution when `gcd(a, b) = 1` and
/// `n >= (a-1)(b-1)`, but any soluble instance is accepted.
pub fn solve_sylvester(a: &BigUint, b: &BigUint, n: &BigUint) -> Result<FrobSolution> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Domain("solve_sylvester: need a, b >= 1".into()));
    }
    let x = least_x(a, b, n).ok_or_else(|| no_solution(a, b, n))?;
    let ax = a * &x;
    if ax > *n {
        return Err(no_solution(a, b, n));
    }
    let y = (n - ax) / b;
    Ok(FrobSolution { x, y })
}

/// A solution of `ax + by = n` with `bh <= x < b(h+1)`.
///
/// Requires `gcd(a, b) | n` and `n >= (a-1)(b-1) + abh`. Solves
/// `ax0 + by0 = n - abh` with `0 <= x0 < b` and shifts: `(x0 + bh, y0)`.
/// The returned `x` is the least valid one in the window.
pub fn solve_refined(a: &BigUint, b: &BigUint, n: &BigUint, h: &BigUint) -> Result<FrobSolution> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Domain("solve_refined: need a, b >= 1".into()));
    }
    let g = a.gcd(b);
    if !(n % &g).is_zero() {
        return Err(Error::Precondition(format!(
            "gcd({a}, {b}) = {g} does not divide {n}"
        )));
    }
    let shift = a * b * h;
    let floor = (a - 1u32) * (b - 1u32) + &shift;
    if *n < floor {
        return Err(Error::Precondition(format!(
            "{n} < (a-1)(b-1) + abh = {floor}"
        )));
    }
    let base = solve_sylvester(a, b, &(n - shift))?;
    debug_assert!(base.x < *b);
    Ok(FrobSolution {
        x: base.x + b * h,
        y: base.y,
    })
}
