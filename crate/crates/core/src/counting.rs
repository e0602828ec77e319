//! Exact per-weight counts of the partition classes.
//!
//! [`count_series`] expands the product generating function of a class
//! factor by factor. [`enumerate_class`] and [`count_two_coloured`] list
//! members explicitly and serve as the independent oracle for it.

use std::cmp::Ordering;
use std::io::Write;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{is_member, ClassParams, Kind, Partition};

/// Upper limit on the number of candidates an enumeration may visit.
pub const ENUMERATION_LIMIT: u64 = 10_000_000;

/// `counts[n]` = number of members of `params` with weight `n`, `0 <= n <= nmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub params: ClassParams,
    pub nmax: usize,
    pub counts: Vec<BigUint>,
}

impl CountTable {
    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.counts.get(n)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "n,count")?;
        for (n, c) in self.counts.iter().enumerate() {
            writeln!(w, "{n},{c}")?;
        }
        Ok(())
    }
}

impl Serialize for CountTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let counts: Vec<String> = self.counts.iter().map(ToString::to_string).collect();
        let mut st = serializer.serialize_struct("CountTable", 3)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("nmax", &self.nmax)?;
        st.serialize_field("counts", &counts)?;
        st.end()
    }
}

/// Multiplies by `1 / (1 - q^part)` in place.
fn apply_geometric(coeffs: &mut [BigUint], part: u64) {
    let Ok(j) = usize::try_from(part) else { return };
    if j == 0 || j >= coeffs.len() {
        return;
    }
    for n in j..coeffs.len() {
        let (lo, hi) = coeffs.split_at_mut(n);
        hi[0] += &lo[n - j];
    }
}

/// Exponents `part * i^e <= nmax`, `i = 0, 1, 2, ...`.
fn power_exponents(part: u64, e: u32, nmax: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 0u128.. {
        let Some(v) = i.checked_pow(e).and_then(|p| p.checked_mul(part as u128)) else { break };
        if v > nmax as u128 {
            break;
        }
        out.push(v as usize);
        if e == 0 {
            // i^0 = 1 for every i; a single term 1 + q^part is all that is meant
            break;
        }
    }
    out
}

/// Multiplies by `sum_{i >= 0} q^{part * i^e}`.
fn apply_power_frequencies(coeffs: &[BigUint], part: u64, e: u32) -> Vec<BigUint> {
    let nmax = coeffs.len() - 1;
    let exps = power_exponents(part, e, nmax);
    let mut out = vec![BigUint::zero(); coeffs.len()];
    for (n, slot) in out.iter_mut().enumerate() {
        for &x in exps.iter().take_while(|&&x| x <= n) {
            *slot += &coeffs[n - x];
        }
    }
    out
}

fn shift(coeffs: Vec<BigUint>, by: u64) -> Vec<BigUint> {
    let len = coeffs.len();
    let by = usize::try_from(by).unwrap_or(usize::MAX).min(len);
    let mut out = vec![BigUint::zero(); by];
    out.extend(coeffs.into_iter().take(len - by));
    out
}

/// Generating-function expansion of a class up to weight `nmax`.
pub fn count_series(c: &ClassParams, nmax: usize) -> Result<CountTable> {
    let s = c.s();
    let top = c.top();
    let t = c.t() as u32;
    let mut coeffs = vec![BigUint::zero(); nmax + 1];
    coeffs[0] = BigUint::one();

    let counts = match c.kind() {
        Kind::I => {
            for j in s..=top {
                if !c.in_v(j) {
                    apply_geometric(&mut coeffs, j);
                }
            }
            shift(coeffs, s)
        }
        Kind::S => {
            for j in s..=top {
                apply_geometric(&mut coeffs, j);
            }
            shift(coeffs, s)
        }
        Kind::D | Kind::DV | Kind::E | Kind::P => {
            let power = match c.kind() {
                Kind::DV | Kind::P => Some(t),
                Kind::E if t < 2 => {
                    return Err(Error::Domain("class E requires |V| >= 2".into()))
                }
                Kind::E => Some(t - 1),
                _ => None,
            };
            for j in (s + 1)..=top.min(s + nmax as u64) {
                match power {
                    Some(e) if c.in_v(j) => {
                        if c.kind() == Kind::P {
                            apply_geometric(&mut coeffs, j);
                        }
                        coeffs = apply_power_frequencies(&coeffs, j, e);
                    }
                    _ => apply_geometric(&mut coeffs, j),
                }
            }
            if c.kind() != Kind::P {
                coeffs[0] = BigUint::zero();
            }
            coeffs
        }
    };
    Ok(CountTable {
        params: c.clone(),
        nmax,
        counts,
    })
}

/// Candidate parts for the explicit enumerator, largest first.
fn candidate_parts(c: &ClassParams, n: u64) -> Result<Vec<u64>> {
    let s = c.s();
    let lo = match c.kind() {
        Kind::I | Kind::S => s,
        Kind::D | Kind::DV | Kind::E => s + 1,
        Kind::P => return Err(Error::UnsupportedPredicate),
    };
    let hi = c.top().min(n.max(lo));
    Ok((lo..=hi)
        .rev()
        .filter(|&p| !(c.kind() == Kind::I && c.in_v(p)))
        .collect())
}

struct Enumerator<'a> {
    parts: &'a [u64],
    freqs: Vec<u64>,
    visited: u64,
    limit: u64,
}

impl Enumerator<'_> {
    fn walk(&mut self, idx: usize, rem: u64, leaf: &mut dyn FnMut(&[u64], &[u64])) -> Result<()> {
        if idx + 1 >= self.parts.len() {
            let p = self.parts.get(idx).copied();
            let last = match p {
                None if rem == 0 => None,
                None => return Ok(()),
                Some(p) if rem.is_multiple_of(p) => Some(rem / p),
                Some(_) => return Ok(()),
            };
            self.visited += 1;
            if self.visited > self.limit {
                return Err(Error::Resource(format!(
                    "enumeration exceeded {} candidates",
                    self.limit
                )));
            }
            if let Some(f) = last {
                self.freqs[idx] = f;
            }
            leaf(self.parts, &self.freqs);
            return Ok(());
        }
        let p = self.parts[idx];
        for f in 0..=rem / p {
            self.freqs[idx] = f;
            self.walk(idx + 1, rem - f * p, leaf)?;
        }
        self.freqs[idx] = 0;
        Ok(())
    }
}

fn partition_from(parts: &[u64], freqs: &[u64]) -> Partition {
    Partition::from_pairs(
        parts
            .iter()
            .zip(freqs)
            .filter(|(_, &f)| f > 0)
            .map(|(&p, &f)| (p, BigUint::from(f))),
    )
    .expect("distinct positive parts")
}

/// Every member of `c` with weight `n`, listed explicitly.
///
/// Candidates are all partitions of `n` into the class's part range (with
/// `V` excluded for class `I`), each tested with [`is_member`]. Output is in
/// generation order: frequency of the largest part ascending, then the next
/// largest, and so on.
pub fn enumerate_class(c: &ClassParams, n: u64) -> Result<Vec<Partition>> {
    enumerate_class_with_limit(c, n, ENUMERATION_LIMIT)
}

pub fn enumerate_class_with_limit(c: &ClassParams, n: u64, limit: u64) -> Result<Vec<Partition>> {
    let parts = candidate_parts(c, n)?;
    let mut e = Enumerator {
        parts: &parts,
        freqs: vec![0; parts.len()],
        visited: 0,
        limit,
    };
    let mut out = Vec::new();
    let mut failure = None;
    e.walk(0, n, &mut |ps, fs| {
        let p = partition_from(ps, fs);
        match is_member(&p, c) {
            Ok(true) => out.push(p),
            Ok(false) => {}
            Err(err) => failure = Some(err),
        }
    })?;
    match failure {
        Some(err) => Err(err),
        None => Ok(out),
    }
}

/// Brute-force count of two-coloured partitions of weight `n` in class `P`:
/// each `k` in `V` carries a green frequency `g >= 0` and a red frequency
/// `r` that is a perfect `t`-th power.
pub fn count_two_coloured(c: &ClassParams, n: u64) -> Result<BigUint> {
    if c.kind() != Kind::P {
        return Err(Error::Domain("count_two_coloured needs class P".into()));
    }
    let t = c.t() as u32;
    // (part, red?) slots
    let slots: Vec<(u64, bool)> = (c.s() + 1..=c.top().min(n.max(c.s() + 1)))
        .flat_map(|p| {
            let red = c.in_v(p).then_some((p, true));
            std::iter::once((p, false)).chain(red)
        })
        .collect();

    fn walk(slots: &[(u64, bool)], t: u32, rem: u64, visited: &mut u64) -> Result<u64> {
        let Some((&(p, red), rest)) = slots.split_first() else {
            return Ok(u64::from(rem == 0));
        };
        *visited += 1;
        if *visited > ENUMERATION_LIMIT {
            return Err(Error::Resource("two-coloured enumeration too large".into()));
        }
        let mut total = 0;
        for i in 0u64.. {
            let f = if red { i.pow(t) } else { i };
            if f * p > rem {
                break;
            }
            total += walk(rest, t, rem - f * p, visited)?;
        }
        Ok(total)
    }

    let mut visited = 0;
    Ok(BigUint::from(walk(&slots, t, n, &mut visited)?))
}

/// Sign of `counts_a[n] - counts_b[n]` for every `n`, with the last weight
/// at which each sign occurs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub a: ClassParams,
    pub b: ClassParams,
    pub nmax: usize,
    pub counts_a: Vec<BigUint>,
    pub counts_b: Vec<BigUint>,
    pub signs: Vec<i8>,
    pub last_positive: Option<usize>,
    pub last_negative: Option<usize>,
    pub last_zero: Option<usize>,
}

impl ScanReport {
    /// Whether every sign in `lo..=hi` is `<= 0`.
    pub fn nonpositive_on(&self, lo: usize, hi: usize) -> bool {
        self.signs[lo..=hi].iter().all(|&x| x <= 0)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "n,count_a,count_b,sign")?;
        for n in 0..=self.nmax {
            writeln!(w, "{n},{},{},{}", self.counts_a[n], self.counts_b[n], self.signs[n])?;
        }
        Ok(())
    }
}

impl Serialize for ScanReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let strs = |v: &[BigUint]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        let mut st = serializer.serialize_struct("ScanReport", 9)?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("b", &self.b)?;
        st.serialize_field("nmax", &self.nmax)?;
        st.serialize_field("last_positive", &self.last_positive)?;
        st.serialize_field("last_negative", &self.last_negative)?;
        st.serialize_field("last_zero", &self.last_zero)?;
        st.serialize_field("signs", &self.signs)?;
        st.serialize_field("counts_a", &strs(&self.counts_a))?;
        st.serialize_field("counts_b", &strs(&self.counts_b))?;
        st.end()
    }
}

pub fn inequality_scan(a: &ClassParams, b: &ClassParams, nmax: usize) -> Result<ScanReport> {
    let ta = count_series(a, nmax)?;
    let tb = count_series(b, nmax)?;
    let signs: Vec<i8> = ta
        .counts
        .iter()
        .zip(&tb.counts)
        .map(|(x, y)| match x.cmp(y) {
            Ordering::Greater => 1,
            Ordering::Less => -1,
            Ordering::Equal => 0,
        })
        .collect();
    let last = |want: i8| signs.iter().rposition(|&x| x == want);
    Ok(ScanReport {
        a: a.clone(),
        b: b.clone(),
        nmax,
        last_positive: last(1),
        last_negative: last(-1),
        last_zero: last(0),
        signs,
        counts_a: ta.counts,
        counts_b: tb.counts,
    })
}
