//! `eta`: partitions in `D_{L,s,V}` whose `V`-frequencies are perfect
//! `t`-th powers, into `I_{L,s,V}`.
//!
//! The `t`-th roots of the `V`-frequencies are packed into one integer
//! `psi` by the cube-shell bijection. The new frequency of `s` is chosen
//! from one of eight pairwise disjoint sets `V_1..V_8`, one per case, and
//! it determines `psi` (and `h_0` in case 2a).

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::trace::{AuxKey, CaseLabel, MapTrace};
use super::{
    big, confirm, helper_part, root_frequencies, solve_or_bound, take_back, v_weight, Mapped,
    Recovered,
};
use crate::bounds::{a_const, b_const, f_st};
use crate::error::{Error, Result};
use crate::frobenius::FrobSolution;
use crate::pairing::{psi_rank, psi_unrank};
use crate::partition::{is_member, ClassParams, Kind, Partition};

/// Constants of `eta` for one parameter set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaConstants {
    params: ClassParams,
    pub s: u64,
    pub t: u32,
    /// `V` in descending order `k_1 > ... > k_t`.
    pub ks: Vec<u64>,
    /// `(12 s t^3)^t`
    pub a: BigUint,
    /// `(39 s^2 t^3)^t`
    pub b: BigUint,
    /// `F(s,t)`
    pub f: BigUint,
    pub u0: u64,
    /// `(s + 2u_0 + 1, s + 2u_0 + 2)`
    pub pair: (u64, u64),
    pub p0: u64,
    pub alpha: BigUint,
    pub beta: BigUint,
    pub gamma: BigUint,
    pub delta: BigUint,
}

/// Location of an `s`-frequency among `V_1..V_8`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub index: u8,
    pub psi: BigUint,
    /// `j(psi)`, for `V_1`.
    pub j: Option<BigUint>,
    /// `h_0`, for `V_8`.
    pub h0: Option<BigUint>,
}

impl EtaConstants {
    pub fn new(c: &ClassParams) -> Result<Self> {
        if c.kind() != Kind::DV {
            return Err(Error::Domain(format!("eta is defined on class DV, not {}", c.kind())));
        }
        let t = c.t();
        let s = c.s();
        if c.l() < 2 * t as u64 + 2 {
            return Err(Error::Domain(format!("eta needs L >= 2t + 2 = {}", 2 * t + 2)));
        }
        let t32 = t as u32;
        let b = b_const(s, t32);
        let u0 = (0..=t as u64)
            .find(|u| !c.in_v(s + 2 * u + 1) && !c.in_v(s + 2 * u + 2))
            .expect("t + 1 pairs cannot all meet a set of size t");
        let in_v = |x: &BigUint| x.to_u64().is_some_and(|x| c.in_v(x));
        let helpers = |p: u64| {
            let psb = big(p * s) * &b;
            [
                big(5) * &psb + 1u32,
                big(5) * &psb + 2u32,
                big(10) * &psb - 1u32,
                big(15) * &psb - 2u32,
            ]
        };
        let p0 = (1..=t as u64 + 1)
            .find(|&p| !helpers(p).iter().any(in_v))
            .expect("t + 1 helper tuples cannot all meet a set of size t");
        let [alpha, beta, gamma, delta] = helpers(p0);
        Ok(EtaConstants {
            params: c.clone(),
            s,
            t: t32,
            ks: c.v_descending(),
            a: a_const(s, t32),
            f: f_st(s, t32),
            b,
            u0,
            pair: (s + 2 * u0 + 1, s + 2 * u0 + 2),
            p0,
            alpha,
            beta,
            gamma,
            delta,
        })
    }

    pub fn params(&self) -> &ClassParams {
        &self.params
    }

    /// `8 s B`, the block removed from `h_0` in case 2a.
    pub fn h_block(&self) -> BigUint {
        big(8 * self.s) * &self.b
    }

    /// Finds the set `V_i` containing `n`, with the data it encodes.
    pub fn classify(&self, n: &BigUint) -> Option<Region> {
        if n.is_zero() {
            return None;
        }
        let r = n % &self.b;
        if !r.is_zero() && r <= &self.b - &self.a {
            let (j, rem) = (n - 1u32).div_rem(&self.b);
            let psi = &self.a + &j * (&self.b - &self.a) + rem;
            return Some(Region { index: 1, psi, j: Some(j), h0: None });
        }
        let i = n.div_ceil(&self.b);
        let psi = &i * &self.b - n;
        debug_assert!(psi < self.a);
        if i >= big(1) && i <= big(6) {
            let index = 1 + i.to_u8().expect("i <= 6");
            return Some(Region { index, psi, j: None, h0: None });
        }
        let (h0, rem) = i.div_rem(&big(7));
        if rem.is_zero() && h0 > big(self.s) {
            return Some(Region { index: 8, psi, j: None, h0: Some(h0) });
        }
        None
    }

    fn helper_pair(&self, case: CaseLabel) -> (&BigUint, &BigUint) {
        match case {
            CaseLabel::T3Case2bI => (&self.alpha, &self.gamma),
            CaseLabel::T3Case2bII => (&self.beta, &self.delta),
            CaseLabel::T3Case2bIIIA => (&self.alpha, &self.beta),
            CaseLabel::T3Case2bIIIB => (&self.alpha, &self.delta),
            CaseLabel::T3Case2bIIIC => (&self.gamma, &self.beta),
            CaseLabel::T3Case2bIIID => (&self.gamma, &self.delta),
            _ => unreachable!("only case 2b uses helper parts"),
        }
    }

    /// Extra weight released in cases 2b.i and 2b.ii (`15 p_0 s B` or `20 p_0 s B`).
    fn released(&self, case: CaseLabel) -> BigUint {
        let m = if case == CaseLabel::T3Case2bI { 15 } else { 20 };
        big(m * self.p0 * self.s) * &self.b
    }

    fn freq_of(&self, p: &Partition, part: &BigUint) -> BigUint {
        part.to_u64().map(|x| p.frequency(x)).unwrap_or_default()
    }

    fn solve_pair(&self, lhs: &BigUint, sfreq: &BigUint) -> Result<FrobSolution> {
        let (a, b) = self.pair;
        solve_or_bound(&big(a), &big(b), lhs, &(big(self.s) * sfreq))
    }

    fn start_trace(&self, case: CaseLabel, psi: &BigUint) -> MapTrace {
        let t = MapTrace::new(case).with(AuxKey::Psi, psi.clone());
        match case {
            CaseLabel::T3Case2bIIIA
            | CaseLabel::T3Case2bIIIB
            | CaseLabel::T3Case2bIIIC
            | CaseLabel::T3Case2bIIID => t.with(AuxKey::P0, self.p0),
            CaseLabel::T3Case2bI | CaseLabel::T3Case2bII => {
                t.with(AuxKey::U0, self.u0).with(AuxKey::P0, self.p0)
            }
            _ => t.with(AuxKey::U0, self.u0),
        }
    }

    /// Least `h` in `[s+1, F-1]` with `f_h >= 8sB` (`V` already removed).
    fn find_h0(&self, p: &Partition) -> Option<u64> {
        let block = self.h_block();
        p.iter()
            .find(|&(h, f)| h > self.s && big(h) < self.f && *f >= block)
            .map(|(h, _)| h)
    }

    /// Applies `eta` to a member of `D_{L,s,V}` (DV).
    pub fn map(&self, p: &Partition) -> Result<Mapped> {
        if !is_member(p, &self.params)? {
            return Err(Error::Membership(format!(
                "DV(L={}, s={}, V={:?})",
                self.params.l(),
                self.s,
                self.params.v()
            )));
        }
        let ms = root_frequencies(p, &self.ks, self.t)?;
        let psi = psi_rank(&ms)?;
        let w = v_weight(&self.ks, &ms, self.t);
        let mut image = p.clone();
        for &k in &self.ks {
            image.take(k);
        }
        let s = big(self.s);
        let top = self.params.top();
        let (case, sfreq, sol, mut trace);
        if psi >= self.a {
            let j = (&psi - &self.a) / (&self.b - &self.a);
            // psi + A (j - 1) + 1, with psi >= A
            sfreq = &psi - &self.a + &self.a * &j + 1u32;
            case = CaseLabel::T3Case1;
            sol = self.solve_pair(&w, &sfreq)?;
            trace = self.start_trace(case, &psi).with(AuxKey::J, j);
        } else if let Some(h0) = self.find_h0(&image) {
            case = CaseLabel::T3Case2a;
            sfreq = big(7 * h0) * &self.b - &psi;
            let block = self.h_block();
            sol = self.solve_pair(&(&w + &block * big(h0)), &sfreq)?;
            image.remove(h0, &block)?;
            trace = self.start_trace(case, &psi).with(AuxKey::H0, h0);
        } else {
            let l0 = image
                .iter()
                .map(|(l, _)| l)
                .find(|&l| big(l) >= self.f)
                .ok_or_else(|| {
                    Error::BoundNotMet(format!(
                        "psi < A, no part below F = {} has frequency >= 8sB, and no part is >= F",
                        self.f
                    ))
                })?;
            let present = |x: &BigUint| !self.freq_of(&image, x).is_zero();
            let (fa, fb, fg, fd) = (
                present(&self.alpha),
                present(&self.beta),
                present(&self.gamma),
                present(&self.delta),
            );
            let mult;
            if fa && fg {
                case = CaseLabel::T3Case2bI;
                mult = 1u32;
            } else if fb && fd {
                case = CaseLabel::T3Case2bII;
                mult = 2;
            } else if !fa && !fb {
                case = CaseLabel::T3Case2bIIIA;
                mult = 3;
            } else if !fa && !fd {
                case = CaseLabel::T3Case2bIIIB;
                mult = 4;
            } else if !fg && !fb {
                case = CaseLabel::T3Case2bIIIC;
                mult = 5;
            } else {
                debug_assert!(!fg && !fd);
                case = CaseLabel::T3Case2bIIID;
                mult = 6;
            }
            sfreq = big(mult as u64) * &self.b - &psi;
            let (c1, c2) = self.helper_pair(case);
            trace = self.start_trace(case, &psi);
            if matches!(case, CaseLabel::T3Case2bI | CaseLabel::T3Case2bII) {
                sol = self.solve_pair(&(self.released(case) + &w), &sfreq)?;
                let one = BigUint::one();
                image.remove(helper_part(c1, top)?, &one)?;
                image.remove(helper_part(c2, top)?, &one)?;
            } else {
                let (p1, p2) = (helper_part(c1, top)?, helper_part(c2, top)?);
                sol = solve_or_bound(c1, c2, &(big(l0) + &w), &(&s * &sfreq))?;
                image.remove(l0, &BigUint::one())?;
                image.add(p1, &sol.x);
                image.add(p2, &sol.y);
                trace.set(AuxKey::L0, l0);
            }
        }
        if !matches!(
            case,
            CaseLabel::T3Case2bIIIA
                | CaseLabel::T3Case2bIIIB
                | CaseLabel::T3Case2bIIIC
                | CaseLabel::T3Case2bIIID
        ) {
            image.add(self.pair.0, &sol.x);
            image.add(self.pair.1, &sol.y);
        }
        image.add(self.s, &sfreq);
        trace.set(AuxKey::X, sol.x);
        trace.set(AuxKey::Y, sol.y);
        trace.set(AuxKey::SFreq, sfreq);
        Ok(Mapped { image, trace })
    }

    /// Reconstructs the preimage of `image` and confirms it by re-applying
    /// the map.
    pub fn recover(&self, image: &Partition) -> Result<Recovered> {
        let sfreq = image.frequency(self.s);
        let region = self.classify(&sfreq).ok_or_else(|| {
            Error::NotInRange(format!("s-frequency {sfreq} lies in none of V_1..V_8"))
        })?;
        let case = CaseLabel::from_t3_region(region.index).expect("index in 1..=8");
        let psi = region.psi.clone();
        let ms = psi_unrank(&psi, self.t as usize)?;
        let w = v_weight(&self.ks, &ms, self.t);
        let top = self.params.top();
        let s = big(self.s);
        let in_range = |e: Error| match e {
            Error::BoundNotMet(m) => Error::NotInRange(m),
            other => other,
        };
        let mut pre = image.clone();
        pre.take(self.s);
        if let Some(&k) = self.ks.iter().find(|&&k| pre.contains(k)) {
            return Err(Error::NotInRange(format!("image contains the forbidden part {k}")));
        }
        let mut trace = self.start_trace(case, &psi);
        let sol = match case {
            CaseLabel::T3Case1 => {
                trace.set(AuxKey::J, region.j.clone().expect("V_1 carries j"));
                self.solve_pair(&w, &sfreq).map_err(in_range)?
            }
            CaseLabel::T3Case2a => {
                let h0 = region.h0.clone().expect("V_8 carries h0");
                let h0_part = h0
                    .to_u64()
                    .filter(|&h| h <= top && big(h) < self.f && !self.params.in_v(h))
                    .ok_or_else(|| Error::NotInRange(format!("h0 = {h0} is not a usable part")))?;
                let block = self.h_block();
                let sol = self.solve_pair(&(&w + &block * &h0), &sfreq).map_err(in_range)?;
                pre.add(h0_part, &block);
                trace.set(AuxKey::H0, h0);
                sol
            }
            CaseLabel::T3Case2bI | CaseLabel::T3Case2bII => {
                let (c1, c2) = self.helper_pair(case);
                let (p1, p2) = (
                    helper_part(c1, top).map_err(in_range)?,
                    helper_part(c2, top).map_err(in_range)?,
                );
                let sol = self
                    .solve_pair(&(self.released(case) + &w), &sfreq)
                    .map_err(in_range)?;
                pre.add(p1, &BigUint::one());
                pre.add(p2, &BigUint::one());
                sol
            }
            _ => {
                let (c1, c2) = self.helper_pair(case);
                let (p1, p2) = (
                    helper_part(c1, top).map_err(in_range)?,
                    helper_part(c2, top).map_err(in_range)?,
                );
                let x = pre.take(p1);
                let y = pre.take(p2);
                let total = &s * &sfreq + c1 * &x + c2 * &y;
                if total < w {
                    return Err(Error::NotInRange("recovered l0 is negative".into()));
                }
                let l0 = total - &w;
                let l0_part = l0
                    .to_u64()
                    .filter(|&l| l <= top && big(l) >= self.f && !self.params.in_v(l))
                    .ok_or_else(|| Error::NotInRange(format!("l0 = {l0} is not a usable part")))?;
                pre.add(l0_part, &BigUint::one());
                trace.set(AuxKey::L0, l0);
                FrobSolution { x, y }
            }
        };
        if case.t3_region().is_some_and(|i| i <= 3 || i == 8) {
            take_back(&mut pre, self.pair.0, &sol.x)?;
            take_back(&mut pre, self.pair.1, &sol.y)?;
        }
        for (&k, m) in self.ks.iter().zip(&ms) {
            pre.add(k, &m.pow(self.t));
        }
        trace.set(AuxKey::X, sol.x);
        trace.set(AuxKey::Y, sol.y);
        trace.set(AuxKey::SFreq, sfreq);
        if !is_member(&pre, &self.params)? {
            return Err(Error::NotInRange("recovered preimage is not in DV".into()));
        }
        let rec = Recovered { preimage: pre, trace };
        confirm(self.map(&rec.preimage), image, rec.clone())
    }
}

pub fn eta_t3(p: &Partition, c: &ClassParams) -> Result<Mapped> {
    EtaConstants::new(c)?.map(p)
}

pub fn eta_t3_recover(image: &Partition, c: &ClassParams) -> Result<Recovered> {
    EtaConstants::new(c)?.recover(image)
}
