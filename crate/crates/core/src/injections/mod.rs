//! The constructive injections: `phi` (I into D), `eta` (DV into I) and the
//! alternate `eta` for large impermissible parts, each with an
//! inverse-on-image and an exhaustive verification harness.

mod alt;
mod t1;
mod t3;
mod trace;
mod verify;

pub use alt::{eta_alt, eta_alt_recover};
pub use t1::{phi_t1, phi_t1_recover, t1_interval, T1Params};
pub use t3::{eta_t3, eta_t3_recover, EtaConstants, Region};
pub use trace::{AuxKey, CaseLabel, MapId, MapTrace};
pub use verify::{verify_injection, verify_partitions, Failure, VerifyReport};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::frobenius::{solve_sylvester, FrobSolution};
use crate::partition::{Partition, exact_root};

/// A map's image together with its trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mapped {
    pub image: Partition,
    pub trace: MapTrace,
}

/// A preimage reconstructed from an image, with the trace of the recovery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recovered {
    pub preimage: Partition,
    pub trace: MapTrace,
}

/// Applies a map by identifier.
pub fn apply(map: MapId, p: &Partition, c: &crate::partition::ClassParams) -> Result<Mapped> {
    match map {
        MapId::T1 => phi_t1(p, c),
        MapId::T3 => eta_t3(p, c),
        MapId::Alt => eta_alt(p, c),
    }
}

/// Recovers a preimage by map identifier.
pub fn recover(map: MapId, image: &Partition, c: &crate::partition::ClassParams) -> Result<Recovered> {
    match map {
        MapId::T1 => phi_t1_recover(image, c),
        MapId::T3 => eta_t3_recover(image, c),
        MapId::Alt => eta_alt_recover(image, c),
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// Least-`x` solution of `ax + by = n`, reporting insolubility or a
/// negative right-hand side as an unmet bound.
fn solve_or_bound(a: &BigUint, b: &BigUint, lhs: &BigUint, minus: &BigUint) -> Result<FrobSolution> {
    if lhs < minus {
        return Err(Error::BoundNotMet(format!(
            "right-hand side {lhs} - {minus} is negative"
        )));
    }
    let n = lhs - minus;
    solve_sylvester(a, b, &n).map_err(|e| match e {
        Error::NoSolution { a, b, n } => {
            Error::BoundNotMet(format!("{a}x + {b}y = {n} has no nonnegative solution"))
        }
        other => other,
    })
}

/// The part `p` as a `u64` if it is a legal part (`<= top`).
fn helper_part(p: &BigUint, top: u64) -> Result<u64> {
    match p.to_u64() {
        Some(v) if v <= top => Ok(v),
        _ => Err(Error::BoundNotMet(format!(
            "helper part {p} exceeds the largest allowed part {top}"
        ))),
    }
}

/// `m_i` with `f_{k_i} = m_i^t`, in the order of `ks`.
fn root_frequencies(p: &Partition, ks: &[u64], t: u32) -> Result<Vec<BigUint>> {
    ks.iter()
        .map(|&k| {
            exact_root(&p.frequency(k), t).ok_or_else(|| {
                Error::Membership(format!("frequency of {k} is not a perfect {t}-th power"))
            })
        })
        .collect()
}

/// `sum_i k_i m_i^t`.
fn v_weight(ks: &[u64], ms: &[BigUint], t: u32) -> BigUint {
    ks.iter().zip(ms).map(|(&k, m)| big(k) * m.pow(t)).sum()
}

/// Removes `amount` copies of `part`, mapping underflow to not-in-range.
fn take_back(p: &mut Partition, part: u64, amount: &BigUint) -> Result<()> {
    p.remove(part, amount)
        .map_err(|_| Error::NotInRange(format!("image has fewer than {amount} copies of {part}")))
}

/// Checks that re-applying the forward map to a recovered preimage gives
/// back the image and the same trace.
fn confirm(forward: Result<Mapped>, image: &Partition, recovered: Recovered) -> Result<Recovered> {
    let fwd = forward.map_err(|e| Error::NotInRange(format!("recovered preimage does not map: {e}")))?;
    if fwd.image != *image {
        return Err(Error::NotInRange("recovered preimage maps to a different image".into()));
    }
    if fwd.trace != recovered.trace {
        return Err(Error::NotInRange("recovered trace differs from the forward trace".into()));
    }
    Ok(recovered)
}
