//! Case labels and auxiliary values recorded by each map application.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::ser::{SerializeMap, SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MapId {
    T1,
    T3,
    Alt,
}

impl MapId {
    pub fn as_str(self) -> &'static str {
        match self {
            MapId::T1 => "t1",
            MapId::T3 => "t3",
            MapId::Alt => "alt",
        }
    }
}

impl fmt::Display for MapId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MapId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "t1" => Ok(MapId::T1),
            "t3" => Ok(MapId::T3),
            "alt" => Ok(MapId::Alt),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

impl Serialize for MapId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    T1Case1a,
    T1Case1b,
    T1Case2a,
    T1Case2b,
    T3Case1,
    T3Case2a,
    T3Case2bI,
    T3Case2bII,
    T3Case2bIIIA,
    T3Case2bIIIB,
    T3Case2bIIIC,
    T3Case2bIIID,
    AltCase2,
}

impl CaseLabel {
    pub const T1: [CaseLabel; 4] = [
        CaseLabel::T1Case1a,
        CaseLabel::T1Case1b,
        CaseLabel::T1Case2a,
        CaseLabel::T1Case2b,
    ];

    pub const T3: [CaseLabel; 8] = [
        CaseLabel::T3Case1,
        CaseLabel::T3Case2a,
        CaseLabel::T3Case2bI,
        CaseLabel::T3Case2bII,
        CaseLabel::T3Case2bIIIA,
        CaseLabel::T3Case2bIIIB,
        CaseLabel::T3Case2bIIIC,
        CaseLabel::T3Case2bIIID,
    ];

    pub fn as_str(self) -> &'static str {
        use CaseLabel::*;
        match self {
            T1Case1a => "1a",
            T1Case1b => "1b",
            T1Case2a | T3Case2a => "2a",
            T1Case2b => "2b",
            T3Case1 => "1",
            T3Case2bI => "2b.i",
            T3Case2bII => "2b.ii",
            T3Case2bIIIA => "2b.iii.A",
            T3Case2bIIIB => "2b.iii.B",
            T3Case2bIIIC => "2b.iii.C",
            T3Case2bIIID => "2b.iii.D",
            AltCase2 => "2",
        }
    }

    pub fn map(self) -> MapId {
        use CaseLabel::*;
        match self {
            T1Case1a | T1Case1b | T1Case2a | T1Case2b => MapId::T1,
            AltCase2 => MapId::Alt,
            _ => MapId::T3,
        }
    }

    /// Index `i` of the set `V_i` holding the image's `s`-frequency (T3 only).
    pub fn t3_region(self) -> Option<u8> {
        use CaseLabel::*;
        Some(match self {
            T3Case1 => 1,
            T3Case2bI => 2,
            T3Case2bII => 3,
            T3Case2bIIIA => 4,
            T3Case2bIIIB => 5,
            T3Case2bIIIC => 6,
            T3Case2bIIID => 7,
            T3Case2a => 8,
            _ => return None,
        })
    }

    pub fn from_t3_region(index: u8) -> Option<Self> {
        CaseLabel::T3.into_iter().find(|c| c.t3_region() == Some(index))
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CaseLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Names of the auxiliary quantities a trace may carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AuxKey {
    F,
    D,
    AlphaF,
    I0,
    Sigma,
    Beta,
    Psi,
    J,
    U0,
    P0,
    H0,
    L0,
    Gamma,
    Cns,
    X,
    Y,
    SFreq,
}

impl AuxKey {
    pub fn as_str(self) -> &'static str {
        match self {
            AuxKey::F => "f",
            AuxKey::D => "d",
            AuxKey::AlphaF => "alpha_f",
            AuxKey::I0 => "i0",
            AuxKey::Sigma => "sigma",
            AuxKey::Beta => "beta",
            AuxKey::Psi => "psi",
            AuxKey::J => "j",
            AuxKey::U0 => "u0",
            AuxKey::P0 => "p0",
            AuxKey::H0 => "h0",
            AuxKey::L0 => "l0",
            AuxKey::Gamma => "gamma",
            AuxKey::Cns => "cns",
            AuxKey::X => "x",
            AuxKey::Y => "y",
            AuxKey::SFreq => "s_freq",
        }
    }
}

impl fmt::Display for AuxKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapTrace {
    pub case: CaseLabel,
    pub aux: BTreeMap<AuxKey, BigUint>,
}

impl MapTrace {
    pub fn new(case: CaseLabel) -> Self {
        MapTrace {
            case,
            aux: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: AuxKey, value: impl Into<BigUint>) -> Self {
        self.aux.insert(key, value.into());
        self
    }

    pub fn set(&mut self, key: AuxKey, value: impl Into<BigUint>) {
        self.aux.insert(key, value.into());
    }

    pub fn get(&self, key: AuxKey) -> Option<&BigUint> {
        self.aux.get(&key)
    }

    pub fn map(&self) -> MapId {
        self.case.map()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace serialization is infallible")
    }
}

struct AuxView<'a>(&'a BTreeMap<AuxKey, BigUint>);

impl Serialize for AuxView<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            m.serialize_entry(k.as_str(), &v.to_string())?;
        }
        m.end()
    }
}

impl Serialize for MapTrace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("MapTrace", 3)?;
        st.serialize_field("map", &self.map())?;
        st.serialize_field("case", &self.case)?;
        st.serialize_field("aux", &AuxView(&self.aux))?;
        st.end()
    }
}
