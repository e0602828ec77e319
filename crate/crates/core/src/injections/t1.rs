//! `phi`: smallest-part-`s` partitions avoiding `V` into `D_{L,s}`.
//!
//! The frequency `f` of `s` is absorbed into the two largest forbidden
//! parts `k_1 > k_2`; the window containing the new frequency of `k_2`
//! identifies the case, and within a case `f` (and `i_0`) can be read back.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::trace::{AuxKey, CaseLabel, MapTrace};
use super::{big, confirm, take_back, Mapped, Recovered};
use crate::error::{Error, Result};
use crate::frobenius::{solve_refined, FrobSolution};
use crate::partition::{is_member, ClassParams, Kind, Partition};

/// Constants of `phi` for one parameter set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct T1Params {
    pub s: u64,
    pub top: u64,
    pub k1: u64,
    pub k2: u64,
    pub d: u64,
    /// `2 k_1^5 + k_1^3`, the block removed from part `i_0` in case 2.
    pub c: BigUint,
    pub k1_cubed: BigUint,
    pub k1_fourth: BigUint,
}

impl T1Params {
    pub fn new(c: &ClassParams) -> Result<Self> {
        if c.kind() != Kind::I {
            return Err(Error::Domain(format!("phi is defined on class I, not {}", c.kind())));
        }
        let v = c.v_descending();
        if v.len() < 2 {
            return Err(Error::Domain("phi needs |V| >= 2".into()));
        }
        let (k1, k2) = (v[0], v[1]);
        let k1b = big(k1);
        Ok(T1Params {
            s: c.s(),
            top: c.top(),
            k1,
            k2,
            d: k1.gcd(&k2),
            c: big(2) * k1b.pow(5) + k1b.pow(3),
            k1_cubed: k1b.pow(3),
            k1_fourth: k1b.pow(4),
        })
    }
}

/// The case whose window `[lo, hi)` for the frequency of `k_2` contains `x`.
pub fn t1_interval(tp: &T1Params, x: &BigUint) -> Option<CaseLabel> {
    let k1 = big(tp.k1);
    let dk1 = big(tp.d) * &k1;
    let bounds = [
        (CaseLabel::T1Case1a, k1.clone()),
        (CaseLabel::T1Case1b, dk1.clone()),
        (CaseLabel::T1Case2a, &dk1 + &tp.k1_fourth),
        (CaseLabel::T1Case2b, &dk1 + big(2) * &tp.k1_fourth),
    ];
    bounds.into_iter().find(|(_, hi)| x < hi).map(|(case, _)| case)
}

fn refined(tp: &T1Params, n: &BigUint, h: &BigUint) -> Result<FrobSolution> {
    solve_refined(&big(tp.k2), &big(tp.k1), n, h).map_err(|e| match e {
        Error::Precondition(m) => Error::BoundNotMet(m),
        Error::NoSolution { a, b, n } => {
            Error::BoundNotMet(format!("{a}x + {b}y = {n} has no solution in the window"))
        }
        other => other,
    })
}

pub fn phi_t1(p: &Partition, c: &ClassParams) -> Result<Mapped> {
    let tp = T1Params::new(c)?;
    if !is_member(p, c)? {
        return Err(Error::Membership(format!("I(L={}, s={}, V={:?})", c.l(), c.s(), c.v())));
    }
    let s = big(tp.s);
    let d = big(tp.d);
    let f = p.frequency(tp.s);
    let sf = &s * &f;
    let mut image = p.clone();
    image.take(tp.s);
    let mut trace;
    let sol;
    if f > tp.k1_cubed {
        let alpha = &sf % &d;
        if alpha.is_zero() {
            sol = refined(&tp, &sf, &BigUint::zero())?;
            trace = MapTrace::new(CaseLabel::T1Case1a);
        } else {
            let extra = tp.k2 + alpha.to_u64().expect("alpha < d");
            sol = refined(&tp, &(&sf - big(extra)), &alpha)?;
            image.add(extra, &big(1));
            trace = MapTrace::new(CaseLabel::T1Case1b);
        }
        trace.set(AuxKey::F, f.clone());
        trace.set(AuxKey::D, d.clone());
        trace.set(AuxKey::AlphaF, alpha);
    } else {
        let i0 = p
            .iter()
            .find(|&(part, freq)| part > tp.s && *freq >= tp.c)
            .map(|(part, _)| part)
            .ok_or_else(|| {
                Error::BoundNotMet(format!(
                    "f = {f} <= k1^3 and no part has frequency >= {}",
                    tp.c
                ))
            })?;
        image.remove(i0, &tp.c)?;
        let sigma = &sf + big(i0) * &tp.c;
        let beta = &sigma % &d;
        if beta.is_zero() {
            let h = &d + &f - 1u32;
            sol = refined(&tp, &sigma, &h)?;
            trace = MapTrace::new(CaseLabel::T1Case2a);
        } else {
            let extra = tp.k2 + beta.to_u64().expect("beta < d");
            let h = &d + &tp.k1_cubed + &f - 1u32;
            sol = refined(&tp, &(&sigma - big(extra)), &h)?;
            image.add(extra, &big(1));
            trace = MapTrace::new(CaseLabel::T1Case2b);
        }
        trace.set(AuxKey::F, f.clone());
        trace.set(AuxKey::D, d.clone());
        trace.set(AuxKey::I0, big(i0));
        trace.set(AuxKey::Sigma, sigma);
        trace.set(AuxKey::Beta, beta);
    }
    image.add(tp.k2, &sol.x);
    image.add(tp.k1, &sol.y);
    trace.set(AuxKey::X, sol.x);
    trace.set(AuxKey::Y, sol.y);
    Ok(Mapped { image, trace })
}

fn not_in_range(msg: impl Into<String>) -> Error {
    Error::NotInRange(msg.into())
}

/// Reconstructs the preimage of `image` under `phi` and confirms it by
/// re-applying the map.
pub fn phi_t1_recover(image: &Partition, c: &ClassParams) -> Result<Recovered> {
    let tp = T1Params::new(c)?;
    if image.contains(tp.s) {
        return Err(not_in_range(format!("images of phi contain no part {}", tp.s)));
    }
    let s = big(tp.s);
    let d = big(tp.d);
    let k1 = big(tp.k1);
    let k2 = big(tp.k2);
    let x = image.frequency(tp.k2);
    let y = image.frequency(tp.k1);
    let case = t1_interval(&tp, &x)
        .ok_or_else(|| not_in_range(format!("frequency {x} of {} lies in no window", tp.k2)))?;
    let mut pre = image.clone();
    pre.take(tp.k2);
    pre.take(tp.k1);
    let total = &k2 * &x + &k1 * &y;
    let mut trace = MapTrace::new(case);
    let f;
    match case {
        CaseLabel::T1Case1a | CaseLabel::T1Case1b => {
            let alpha = &x / &k1;
            let num = if alpha.is_zero() {
                total.clone()
            } else {
                let extra = tp.k2 + alpha.to_u64().expect("alpha < d");
                take_back(&mut pre, extra, &big(1))?;
                &total + big(extra)
            };
            let (q, r) = num.div_rem(&s);
            if !r.is_zero() || q <= tp.k1_cubed {
                return Err(not_in_range("recovered f is not a case-1 frequency"));
            }
            f = q;
            trace.set(AuxKey::F, f.clone());
            trace.set(AuxKey::D, d.clone());
            trace.set(AuxKey::AlphaF, alpha);
        }
        CaseLabel::T1Case2a | CaseLabel::T1Case2b => {
            let offset = if case == CaseLabel::T1Case2a {
                &d - 1u32
            } else {
                &d + &tp.k1_cubed - 1u32
            };
            f = &x / &k1 - offset;
            let sf = &s * &f;
            if total < sf {
                return Err(not_in_range("k2 x + k1 y < s f"));
            }
            let rest = &total - &sf;
            let (i0, beta) = if case == CaseLabel::T1Case2a {
                let (q, r) = rest.div_rem(&tp.c);
                if !r.is_zero() {
                    return Err(not_in_range("i0 is not integral"));
                }
                (q, BigUint::zero())
            } else {
                let i0 = &rest / &tp.c + 1u32;
                let shifted = &i0 * &tp.c - &rest;
                if shifted <= k2 || shifted >= &k2 + &d {
                    return Err(not_in_range("beta out of range"));
                }
                let beta = shifted - &k2;
                let extra = tp.k2 + beta.to_u64().expect("beta < d");
                take_back(&mut pre, extra, &big(1))?;
                (i0, beta)
            };
            let i0_part = i0
                .to_u64()
                .filter(|&i| i > tp.s && i <= tp.top)
                .ok_or_else(|| not_in_range(format!("i0 = {i0} is not a part")))?;
            pre.add(i0_part, &tp.c);
            trace.set(AuxKey::F, f.clone());
            trace.set(AuxKey::D, d.clone());
            trace.set(AuxKey::I0, i0.clone());
            trace.set(AuxKey::Sigma, sf + &i0 * &tp.c);
            trace.set(AuxKey::Beta, beta);
        }
        _ => unreachable!("t1_interval yields T1 cases"),
    }
    trace.set(AuxKey::X, x);
    trace.set(AuxKey::Y, y);
    if f.is_zero() {
        return Err(not_in_range("recovered f is zero"));
    }
    pre.add(tp.s, &f);
    if !is_member(&pre, c)? {
        return Err(not_in_range("recovered preimage is not in I"));
    }
    let rec = Recovered { preimage: pre, trace };
    confirm(phi_t1(&rec.preimage, c), image, rec.clone())
}
