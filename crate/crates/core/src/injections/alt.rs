//! The alternate `eta` for large forbidden parts (`k_t >= (2^{t+4}s + s^2) t^t / t!`).
//!
//! The support of `(m_1..m_t)` is written in binary as `gamma`; the nonzero
//! entries are ranked by the combinatorial number system. The `s`-frequency
//! `2^{t+4} cns - (2 gamma - 1)` is odd and its residue mod `2^{t+4}`
//! recovers `gamma`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::trace::{AuxKey, CaseLabel, MapTrace};
use super::{big, confirm, root_frequencies, solve_or_bound, take_back, v_weight, Mapped, Recovered};
use crate::bounds::alt_kt_bound;
use crate::error::{Error, Result};
use crate::pairing::{cns_rank, cns_unrank};
use crate::partition::{is_member, ClassParams, Kind, Partition};

struct AltParams {
    s: u64,
    t: u32,
    ks: Vec<u64>,
    modulus: BigUint,
}

fn alt_params(c: &ClassParams) -> Result<AltParams> {
    if c.kind() != Kind::DV {
        return Err(Error::Domain(format!(
            "the alternate map is defined on class DV, not {}",
            c.kind()
        )));
    }
    let t = c.t() as u32;
    let s = c.s();
    let kt = *c.v().first().expect("DV requires t >= 1");
    let bound = alt_kt_bound(s, t);
    if num_rational::BigRational::from_integer(BigInt::from(kt)) < bound {
        return Err(Error::Domain(format!("k_t = {kt} is below the threshold {bound}")));
    }
    if c.top() < s + 2 {
        return Err(Error::Domain("parts s+1 and s+2 must be available".into()));
    }
    Ok(AltParams {
        s,
        t,
        ks: c.v_descending(),
        modulus: BigUint::from(1u32) << (t + 4),
    })
}

pub fn eta_alt(p: &Partition, c: &ClassParams) -> Result<Mapped> {
    let ap = alt_params(c)?;
    if !is_member(p, c)? {
        return Err(Error::Membership(format!("DV(L={}, s={}, V={:?})", c.l(), c.s(), c.v())));
    }
    let ms = root_frequencies(p, &ap.ks, ap.t)?;
    let nonzero: Vec<BigUint> = ms.iter().filter(|m| !m.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Err(Error::OutOfScope(
            "all V-frequencies are zero; this case is not constructed here".into(),
        ));
    }
    let gamma: BigUint = ms
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(i, _)| BigUint::from(1u32) << i)
        .sum();
    let cns = cns_rank(&nonzero)?;
    let sfreq = &ap.modulus * &cns - (&gamma * 2u32 - 1u32);
    let w = v_weight(&ap.ks, &ms, ap.t);
    let sol = solve_or_bound(&big(ap.s + 1), &big(ap.s + 2), &w, &(big(ap.s) * &sfreq))?;
    let mut image = p.clone();
    for &k in &ap.ks {
        image.take(k);
    }
    image.add(ap.s, &sfreq);
    image.add(ap.s + 1, &sol.x);
    image.add(ap.s + 2, &sol.y);
    let trace = MapTrace::new(CaseLabel::AltCase2)
        .with(AuxKey::Gamma, gamma)
        .with(AuxKey::Cns, cns)
        .with(AuxKey::X, sol.x)
        .with(AuxKey::Y, sol.y)
        .with(AuxKey::SFreq, sfreq);
    Ok(Mapped { image, trace })
}

/// Decodes `(gamma, cns)` from an `s`-frequency.
fn decode(sfreq: &BigUint, modulus: &BigUint, t: u32) -> Option<(BigUint, BigUint)> {
    let r = sfreq % modulus;
    if r.is_even() {
        return None;
    }
    let gamma = (modulus - &r + 1u32) / 2u32;
    if gamma.is_zero() || gamma >= BigUint::from(1u32) << t {
        return None;
    }
    let (cns, rem) = (sfreq + &gamma * 2u32 - 1u32).div_rem(modulus);
    debug_assert!(rem.is_zero());
    Some((gamma, cns))
}

pub fn eta_alt_recover(image: &Partition, c: &ClassParams) -> Result<Recovered> {
    let ap = alt_params(c)?;
    let sfreq = image.frequency(ap.s);
    let (gamma, cns) = decode(&sfreq, &ap.modulus, ap.t)
        .ok_or_else(|| Error::NotInRange(format!("s-frequency {sfreq} encodes no support")))?;
    let g = gamma.to_u64().expect("gamma < 2^t");
    let support: Vec<usize> = (0..ap.t as usize).filter(|i| g >> i & 1 == 1).collect();
    let values = cns_unrank(&cns, support.len())?
        .ok_or_else(|| Error::NotInRange(format!("{cns} is not a rank of arity {}", support.len())))?;
    let mut ms = vec![BigUint::zero(); ap.t as usize];
    for (&i, v) in support.iter().zip(values) {
        ms[i] = v;
    }
    let w = v_weight(&ap.ks, &ms, ap.t);
    let sol = solve_or_bound(&big(ap.s + 1), &big(ap.s + 2), &w, &(big(ap.s) * &sfreq))
        .map_err(|e| Error::NotInRange(e.to_string()))?;
    let mut pre = image.clone();
    pre.take(ap.s);
    take_back(&mut pre, ap.s + 1, &sol.x)?;
    take_back(&mut pre, ap.s + 2, &sol.y)?;
    if let Some(&k) = ap.ks.iter().find(|&&k| pre.contains(k)) {
        return Err(Error::NotInRange(format!("image contains the forbidden part {k}")));
    }
    for (&k, m) in ap.ks.iter().zip(&ms) {
        pre.add(k, &m.pow(ap.t));
    }
    if !is_member(&pre, c)? {
        return Err(Error::NotInRange("recovered preimage is not in DV".into()));
    }
    let trace = MapTrace::new(CaseLabel::AltCase2)
        .with(AuxKey::Gamma, gamma)
        .with(AuxKey::Cns, cns)
        .with(AuxKey::X, sol.x)
        .with(AuxKey::Y, sol.y)
        .with(AuxKey::SFreq, sfreq);
    let rec = Recovered { preimage: pre, trace };
    confirm(eta_alt(&rec.preimage, c), image, rec.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> ClassParams {
        ClassParams::new(130, 1, vec![130, 131], Kind::DV).unwrap()
    }

    fn part(pairs: &[(u64, u64)]) -> Partition {
        Partition::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn single_support_example() {
        let c = params();
        let p = part(&[(131, 1)]);
        let m = eta_alt(&p, &c).unwrap();
        assert_eq!(m.image, part(&[(1, 63), (2, 1), (3, 22)]));
        assert_eq!(m.trace.get(AuxKey::Gamma), Some(&big(1)));
        assert_eq!(m.trace.get(AuxKey::Cns), Some(&big(1)));
        let r = eta_alt_recover(&m.image, &c).unwrap();
        assert_eq!(r.preimage, p);
        assert_eq!(r.trace, m.trace);
    }

    #[test]
    fn full_support_example() {
        let c = params();
        let p = part(&[(130, 1), (131, 1)]);
        let m = eta_alt(&p, &c).unwrap();
        assert_eq!(m.trace.get(AuxKey::SFreq), Some(&big(123)));
        assert_eq!(m.image.weight(), big(261));
        assert_eq!(eta_alt_recover(&m.image, &c).unwrap().preimage, p);
    }

    #[test]
    fn errors() {
        let c = params();
        assert!(matches!(eta_alt(&part(&[(5, 30)]), &c), Err(Error::OutOfScope(_))));
        let small = ClassParams::new(10, 1, vec![5, 7], Kind::DV).unwrap();
        assert!(matches!(eta_alt(&part(&[(7, 1)]), &small), Err(Error::Domain(_))));
        assert!(matches!(
            eta_alt_recover(&part(&[(1, 64)]), &c),
            Err(Error::NotInRange(_))
        ));
    }
}
