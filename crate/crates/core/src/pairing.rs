//! Maps `N^t -> N` used to pack several frequencies into one number.
//!
//! * [`cantor_pair`]: diagonal enumeration, `(m, n) -> C(m+n-1, 2) + m`.
//! * [`cns_rank`]: the combinatorial-number-system map
//!   `C(m_1+..+m_t, t) + .. + C(m_1+m_2, 2) + C(m_1, 1)` on positive tuples.
//! * [`spiral_pair`]: square-shell enumeration of `N^2`.
//! * [`psi0_rank`] / [`psi_rank`]: cube-shell bijections `N^t -> N` and
//!   `W^t -> N`. Within a shell points are taken in lexicographic order.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Binomial coefficient `C(n, k)` for arbitrary `n` and machine-sized `k`.
pub fn binomial(n: &BigUint, k: usize) -> BigUint {
    if BigUint::from(k) > *n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - BigUint::from(i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// Largest `c` with `C(c, k) <= r`, for `k >= 1`.
fn largest_binomial_at_most(r: &BigUint, k: usize) -> BigUint {
    // C(k-1, k) = 0 <= r always holds.
    let mut lo = BigUint::from(k - 1);
    let mut hi = BigUint::from(k.max(1));
    while binomial(&hi, k) <= *r {
        lo = hi.clone();
        hi <<= 1;
    }
    // invariant: C(lo, k) <= r < C(hi, k)
    while &hi - &lo > BigUint::one() {
        let mid = (&lo + &hi) >> 1;
        if binomial(&mid, k) <= *r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn require_positive(values: &[BigUint], what: &str) -> Result<()> {
    if values.is_empty() {
        return Err(Error::Domain(format!("{what}: arity must be at least 1")));
    }
    if values.iter().any(Zero::is_zero) {
        return Err(Error::Domain(format!("{what}: entries must be >= 1")));
    }
    Ok(())
}

pub fn cantor_pair(m: &BigUint, n: &BigUint) -> Result<BigUint> {
    if m.is_zero() || n.is_zero() {
        return Err(Error::Domain("cantor_pair: m, n must be >= 1".into()));
    }
    Ok(binomial(&(m + n - 1u32), 2) + m)
}

pub fn cantor_unpair(v: &BigUint) -> Result<(BigUint, BigUint)> {
    if v.is_zero() {
        return Err(Error::Domain("cantor_unpair: value must be >= 1".into()));
    }
    // diagonal d = m + n - 1 satisfies C(d, 2) < v <= C(d + 1, 2)
    let d = largest_binomial_at_most(&(v - 1u32), 2);
    let m = v - binomial(&d, 2);
    let n = &d + 1u32 - &m;
    Ok((m, n))
}

/// `C(m_1+..+m_t, t) + .. + C(m_1, 1)`; injective on tuples of positive entries.
pub fn cns_rank(m: &[BigUint]) -> Result<BigUint> {
    require_positive(m, "cns_rank")?;
    let mut prefix = BigUint::zero();
    let mut total = BigUint::zero();
    for (j, mj) in m.iter().enumerate() {
        prefix += mj;
        total += binomial(&prefix, j + 1);
    }
    Ok(total)
}

/// Inverse of [`cns_rank`] at arity `t`; `Ok(None)` when `v` has no positive preimage.
pub fn cns_unrank(v: &BigUint, t: usize) -> Result<Option<Vec<BigUint>>> {
    if v.is_zero() || t == 0 {
        return Err(Error::Domain("cns_unrank: need v >= 1 and t >= 1".into()));
    }
    // Greedy combinatorial-number-system digits c_t > c_{t-1} > .. > c_1 >= 0.
    let mut rest = v.clone();
    let mut digits = vec![BigUint::zero(); t];
    for j in (1..=t).rev() {
        let c = largest_binomial_at_most(&rest, j);
        rest -= binomial(&c, j);
        digits[j - 1] = c;
    }
    debug_assert!(rest.is_zero());
    if digits[0].is_zero() {
        return Ok(None);
    }
    let mut out = Vec::with_capacity(t);
    let mut prev = BigUint::zero();
    for c in digits {
        out.push(&c - &prev);
        prev = c;
    }
    Ok(Some(out))
}

pub fn spiral_pair(m: &BigUint, n: &BigUint) -> Result<BigUint> {
    if m.is_zero() || n.is_zero() {
        return Err(Error::Domain("spiral_pair: m, n must be >= 1".into()));
    }
    Ok(if m >= n {
        let a = m - 1u32;
        &a * &a + 2u32 * n - 1u32
    } else {
        let a = n - 1u32;
        &a * &a + 2u32 * m
    })
}

pub fn spiral_unpair(v: &BigUint) -> Result<(BigUint, BigUint)> {
    if v.is_zero() {
        return Err(Error::Domain("spiral_unpair: value must be >= 1".into()));
    }
    let h = ceil_root(v, 2);
    let below = (&h - 1u32).pow(2);
    let r = v - below; // 1 ..= 2h - 1
    if r.bit(0) {
        Ok((h, (r + 1u32) >> 1))
    } else {
        Ok((r >> 1, h))
    }
}

/// Least `h >= 1` with `h^e >= v`.
fn ceil_root(v: &BigUint, e: u32) -> BigUint {
    let r = v.nth_root(e);
    if r.pow(e) == *v {
        r
    } else {
        r + 1u32
    }
}

/// Cube-shell bijection `N^t -> N`:
/// `(max-1)^t < psi0(m) <= max^t`, lexicographic order inside each shell.
pub fn psi0_rank(m: &[BigUint]) -> Result<BigUint> {
    require_positive(m, "psi0_rank")?;
    let t = m.len() as u32;
    let h = m.iter().max().expect("nonempty").clone();
    let hm1 = &h - 1u32;
    let mut index = BigUint::zero();
    let mut prefix_hits_h = false;
    for (i, mi) in m.iter().enumerate() {
        let r = t - 1 - i as u32;
        // completions of the remaining r coordinates that keep the max at h
        let block = if prefix_hits_h {
            h.pow(r)
        } else {
            h.pow(r) - hm1.pow(r)
        };
        index += (mi - 1u32) * block;
        if *mi == h {
            prefix_hits_h = true;
        }
    }
    Ok(hm1.pow(t) + index + 1u32)
}

pub fn psi0_unrank(v: &BigUint, t: usize) -> Result<Vec<BigUint>> {
    if v.is_zero() || t == 0 {
        return Err(Error::Domain("psi0_unrank: need v >= 1 and t >= 1".into()));
    }
    let te = t as u32;
    let h = ceil_root(v, te);
    let hm1 = &h - 1u32;
    let mut index = v - hm1.pow(te) - 1u32;
    let mut out = Vec::with_capacity(t);
    let mut prefix_hits_h = false;
    for i in 0..te {
        let r = te - 1 - i;
        let mi = if prefix_hits_h {
            let block = h.pow(r);
            let q = &index / &block;
            index -= &q * &block;
            q + 1u32
        } else {
            let block = h.pow(r) - hm1.pow(r);
            let low = if block.is_zero() {
                BigUint::zero()
            } else {
                &index / &block
            };
            if !block.is_zero() && low < hm1 {
                index -= &low * &block;
                low + 1u32
            } else {
                index -= &hm1 * &block;
                h.clone()
            }
        };
        if mi == h {
            prefix_hits_h = true;
        }
        out.push(mi);
    }
    debug_assert!(index.is_zero());
    Ok(out)
}

/// `psi(m) = psi0(m + 1)` on tuples of whole numbers:
/// `max^t < psi(m) <= (max+1)^t`.
pub fn psi_rank(m: &[BigUint]) -> Result<BigUint> {
    if m.is_empty() {
        return Err(Error::Domain("psi_rank: arity must be at least 1".into()));
    }
    let shifted: Vec<BigUint> = m.iter().map(|x| x + 1u32).collect();
    psi0_rank(&shifted)
}

pub fn psi_unrank(v: &BigUint, t: usize) -> Result<Vec<BigUint>> {
    Ok(psi0_unrank(v, t)?
        .into_iter()
        .map(|x| x - 1u32)
        .collect())
}
