//! Partitions as frequency maps and the six partition classes.
//!
//! A [`Partition`] stores `part -> frequency` with arbitrary-precision
//! frequencies, so the synthetic partitions produced by the injective maps
//! (frequencies like `8s(39s^2t^3)^t`) cost nothing to represent.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A multiset of positive parts. Zero frequencies are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: BTreeMap<u64, BigUint>,
}

impl Partition {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a partition from `(part, frequency)` pairs. Pairs with zero
    /// frequency are rejected, as are repeated parts and part `0`.
    pub fn from_pairs<I, F>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, F)>,
        F: Into<BigUint>,
    {
        let mut parts = BTreeMap::new();
        for (part, freq) in pairs {
            let freq = freq.into();
            if part == 0 {
                return Err(Error::Parse("part 0 is not allowed".into()));
            }
            if freq.is_zero() {
                return Err(Error::Parse(format!("part {part} has zero frequency")));
            }
            if parts.insert(part, freq).is_some() {
                return Err(Error::Parse(format!("duplicate part {part}")));
            }
        }
        Ok(Partition { parts })
    }

    /// Frequency of `part` (zero when absent).
    pub fn frequency(&self, part: u64) -> BigUint {
        self.parts.get(&part).cloned().unwrap_or_default()
    }

    pub fn frequency_ref(&self, part: u64) -> Option<&BigUint> {
        self.parts.get(&part)
    }

    pub fn contains(&self, part: u64) -> bool {
        self.parts.contains_key(&part)
    }

    /// Sets the frequency of `part`; a zero frequency removes the part.
    ///
    /// Panics if `part == 0`.
    pub fn set_frequency(&mut self, part: u64, freq: BigUint) {
        assert!(part > 0, "part 0 is not allowed");
        if freq.is_zero() {
            self.parts.remove(&part);
        } else {
            self.parts.insert(part, freq);
        }
    }

    /// Adds `amount` copies of `part`.
    pub fn add(&mut self, part: u64, amount: &BigUint) {
        assert!(part > 0, "part 0 is not allowed");
        if amount.is_zero() {
            return;
        }
        *self.parts.entry(part).or_default() += amount;
    }

    /// Removes `amount` copies of `part`, failing if fewer are present.
    pub fn remove(&mut self, part: u64, amount: &BigUint) -> Result<()> {
        if amount.is_zero() {
            return Ok(());
        }
        match self.parts.get_mut(&part) {
            Some(f) if *f >= *amount => {
                *f -= amount;
                if f.is_zero() {
                    self.parts.remove(&part);
                }
                Ok(())
            }
            _ => Err(Error::Domain(format!(
                "cannot remove {amount} copies of part {part} (have {})",
                self.frequency(part)
            ))),
        }
    }

    /// Removes every copy of `part`, returning its former frequency.
    pub fn take(&mut self, part: u64) -> BigUint {
        self.parts.remove(&part).unwrap_or_default()
    }

    pub fn weight(&self) -> BigUint {
        self.parts
            .iter()
            .map(|(&p, f)| f * BigUint::from(p))
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of distinct parts.
    pub fn distinct_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn smallest_part(&self) -> Option<u64> {
        self.parts.keys().next().copied()
    }

    pub fn largest_part(&self) -> Option<u64> {
        self.parts.keys().next_back().copied()
    }

    /// Iterates `(part, frequency)` in ascending part order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigUint)> + '_ {
        self.parts.iter().map(|(&p, f)| (p, f))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("partition serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (p, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}^{m}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.parts.len()))?;
        for (p, f) in &self.parts {
            seq.serialize_element(&[p.to_string(), f.to_string()])?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(String, String)> = Vec::deserialize(deserializer)?;
        let mut pairs = Vec::with_capacity(raw.len());
        for (p, f) in raw {
            let part = p
                .parse::<u64>()
                .map_err(|_| de::Error::custom(format!("invalid part `{p}`")))?;
            let freq = BigUint::from_str(&f)
                .map_err(|_| de::Error::custom(format!("invalid frequency `{f}`")))?;
            pairs.push((part, freq));
        }
        Partition::from_pairs(pairs).map_err(de::Error::custom)
    }
}

/// The partition classes handled by the workbench.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    /// Smallest part exactly `s`, parts at most `L+s`, no part from `V`.
    I,
    /// Nonempty, parts in `{s+1, ..., L+s}`.
    D,
    /// `D` with every `V`-frequency a perfect `t`-th power.
    DV,
    /// `D` with every `V`-frequency a perfect `(t-1)`-th power.
    E,
    /// Two-coloured: `V`-parts come in a free green copy and a red copy with
    /// perfect `t`-th power frequency. Counted only.
    P,
    /// Smallest part exactly `s`, parts at most `L+s`.
    S,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::I => "I",
            Kind::D => "D",
            Kind::DV => "DV",
            Kind::E => "E",
            Kind::P => "P",
            Kind::S => "S",
        };
        f.write_str(s)
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" => Ok(Kind::I),
            "D" => Ok(Kind::D),
            "DV" => Ok(Kind::DV),
            "E" => Ok(Kind::E),
            "P" => Ok(Kind::P),
            "S" => Ok(Kind::S),
            other => Err(Error::Parse(format!("unknown class kind `{other}`"))),
        }
    }
}

/// `(L, s, V, kind)`; `V` is kept strictly ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct ClassParams {
    l: u64,
    s: u64,
    v: Vec<u64>,
    kind: Kind,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    #[serde(rename = "L")]
    l: u64,
    s: u64,
    #[serde(rename = "V")]
    v: Vec<u64>,
    kind: Kind,
}

impl TryFrom<RawParams> for ClassParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        ClassParams::new(raw.l, raw.s, raw.v, raw.kind)
    }
}

impl From<ClassParams> for RawParams {
    fn from(c: ClassParams) -> Self {
        RawParams {
            l: c.l,
            s: c.s,
            v: c.v,
            kind: c.kind,
        }
    }
}

impl ClassParams {
    /// Validates and normalises the parameters. `v` may be given in any
    /// order but must not repeat.
    pub fn new(l: u64, s: u64, mut v: Vec<u64>, kind: Kind) -> Result<Self> {
        if l == 0 || s == 0 {
            return Err(Error::Domain("L and s must be positive".into()));
        }
        let top = l
            .checked_add(s)
            .ok_or_else(|| Error::Domain("L + s overflows".into()))?;
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Domain("V contains a repeated element".into()));
        }
        if let Some(&bad) = v.iter().find(|&&k| k <= s || k > top) {
            return Err(Error::Domain(format!(
                "element {bad} of V lies outside {{{}..{top}}}",
                s + 1
            )));
        }
        match kind {
            Kind::DV | Kind::P if v.is_empty() => {
                return Err(Error::Domain(format!("class {kind} requires |V| >= 1")))
            }
            Kind::E if v.len() < 2 => {
                return Err(Error::Domain("class E requires |V| >= 2".into()))
            }
            _ => {}
        }
        Ok(ClassParams { l, s, v, kind })
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    /// `L + s`, the largest admissible part.
    pub fn top(&self) -> u64 {
        self.l + self.s
    }

    /// `V` in ascending order.
    pub fn v(&self) -> &[u64] {
        &self.v
    }

    /// `V` as `k_1 > k_2 > ... > k_t`.
    pub fn v_descending(&self) -> Vec<u64> {
        self.v.iter().rev().copied().collect()
    }

    /// `t = |V|`.
    pub fn t(&self) -> usize {
        self.v.len()
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Same `(L, s, V)` with another kind.
    pub fn with_kind(&self, kind: Kind) -> Result<Self> {
        ClassParams::new(self.l, self.s, self.v.clone(), kind)
    }

    pub fn in_v(&self, part: u64) -> bool {
        self.v.binary_search(&part).is_ok()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("params serialization is infallible")
    }
}

impl fmt::Display for ClassParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(L={}, s={}, V={:?})", self.kind, self.l, self.s, self.v)
    }
}

/// Whether `n` is `i^e` for some integer `i >= 0`. Every integer is a first
/// power; for `e = 0` only `1` (and `0 = 0^0` is excluded by convention).
pub fn is_perfect_power(n: &BigUint, e: u32) -> bool {
    match e {
        0 => n.is_one(),
        1 => true,
        _ => {
            let r = n.nth_root(e);
            &r.pow(e) == n
        }
    }
}

/// The exact `e`-th root of `n`, if there is one.
pub fn exact_root(n: &BigUint, e: u32) -> Option<BigUint> {
    if e == 0 {
        return None;
    }
    let r = n.nth_root(e);
    (&r.pow(e) == n).then_some(r)
}

fn all_parts_within(p: &Partition, lo: u64, hi: u64) -> bool {
    match (p.smallest_part(), p.largest_part()) {
        (Some(a), Some(b)) => a >= lo && b <= hi,
        _ => true,
    }
}

fn v_frequencies_are_powers(p: &Partition, c: &ClassParams, e: u32) -> bool {
    c.v().iter().all(|&k| match p.frequency_ref(k) {
        None => true,
        Some(f) => is_perfect_power(f, e),
    })
}

/// Membership predicate for every class except `P`.
pub fn is_member(p: &Partition, c: &ClassParams) -> Result<bool> {
    let s = c.s();
    let top = c.top();
    let t = c.t() as u32;
    let in_d = || !p.is_empty() && all_parts_within(p, s + 1, top);
    Ok(match c.kind() {
        Kind::I => {
            p.smallest_part() == Some(s)
                && all_parts_within(p, s, top)
                && c.v().iter().all(|&k| !p.contains(k))
        }
        Kind::D => in_d(),
        Kind::DV => in_d() && v_frequencies_are_powers(p, c, t),
        Kind::E => in_d() && v_frequencies_are_powers(p, c, t - 1),
        Kind::S => p.smallest_part() == Some(s) && all_parts_within(p, s, top),
        Kind::P => return Err(Error::UnsupportedPredicate),
    })
}
