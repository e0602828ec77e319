//! Truncated power series in `q` with big-integer coefficients, and the
//! series `H`, `H'`, `H''` comparing the partition classes.
//!
//! The constructions here use only series primitives (products of
//! Pochhammer reciprocals, `(1 - q^k)` factors and power-frequency sums),
//! never the counting module, so the two pipelines check each other.

use std::io::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeff: Vec<BigInt>,
}

impl Series {
    pub fn zero(nmax: usize) -> Self {
        Series {
            coeff: vec![BigInt::zero(); nmax + 1],
        }
    }

    pub fn one(nmax: usize) -> Self {
        let mut s = Self::zero(nmax);
        s.coeff[0] = BigInt::one();
        s
    }

    /// `q^e` (zero if `e > nmax`).
    pub fn monomial(e: u64, nmax: usize) -> Self {
        let mut s = Self::zero(nmax);
        if let Some(c) = usize::try_from(e).ok().and_then(|e| s.coeff.get_mut(e)) {
            *c = BigInt::one();
        }
        s
    }

    /// `1 - q^k`.
    pub fn one_minus(k: u64, nmax: usize) -> Self {
        let mut s = Self::one(nmax);
        s = s.sub(&Self::monomial(k, nmax)).expect("same order");
        s
    }

    pub fn from_coeffs(coeff: Vec<BigInt>) -> Result<Self> {
        if coeff.is_empty() {
            return Err(Error::Domain("a series needs at least one coefficient".into()));
        }
        Ok(Series { coeff })
    }

    pub fn nmax(&self) -> usize {
        self.coeff.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeff[n]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeff
    }

    fn check(&self, other: &Series) -> Result<()> {
        if self.nmax() != other.nmax() {
            return Err(Error::MismatchedOrder(self.nmax(), other.nmax()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check(other)?;
        Ok(Series {
            coeff: self.coeff.iter().zip(&other.coeff).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check(other)?;
        Ok(Series {
            coeff: self.coeff.iter().zip(&other.coeff).map(|(a, b)| a - b).collect(),
        })
    }

    /// Truncated product. Iterates over the nonzero terms of the sparser
    /// operand, so multiplying by a short polynomial is linear in `nmax`.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check(other)?;
        let nnz = |s: &Series| s.coeff.iter().filter(|c| !c.is_zero()).count();
        let (sparse, dense) = if nnz(self) <= nnz(other) {
            (self, other)
        } else {
            (other, self)
        };
        let n = self.coeff.len();
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in sparse.coeff.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in dense.coeff[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Series { coeff: out })
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "n,coeff")?;
        for (n, c) in self.coeff.iter().enumerate() {
            writeln!(w, "{n},{c}")?;
        }
        Ok(())
    }
}

impl Serialize for Series {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coeff.iter().map(ToString::to_string).collect();
        let mut st = serializer.serialize_struct("Series", 2)?;
        st.serialize_field("nmax", &self.nmax())?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

/// `1 / (q^a; q)_terms = 1 / prod_{j=0}^{terms-1} (1 - q^{a+j})`.
pub fn inv_pochhammer(a_exp: u64, terms: u64, nmax: usize) -> Result<Series> {
    if a_exp == 0 {
        return Err(Error::Domain("inv_pochhammer: exponent must be >= 1".into()));
    }
    let mut coeff = vec![BigInt::zero(); nmax + 1];
    coeff[0] = BigInt::one();
    for j in 0..terms {
        let Some(part) = a_exp.checked_add(j).and_then(|p| usize::try_from(p).ok()) else {
            break;
        };
        if part > nmax {
            break;
        }
        for n in part..=nmax {
            let prev = coeff[n - part].clone();
            coeff[n] += prev;
        }
    }
    Ok(Series { coeff })
}

/// `sum_{i >= 0} q^{k i^t}`.
pub fn power_freq_series(k: u64, t: u32, nmax: usize) -> Result<Series> {
    if k == 0 || t == 0 {
        return Err(Error::Domain("power_freq_series: need k, t >= 1".into()));
    }
    let mut s = Series::zero(nmax);
    for i in 0u128.. {
        let Some(e) = i.checked_pow(t).and_then(|p| p.checked_mul(k as u128)) else { break };
        if e > nmax as u128 {
            break;
        }
        s.coeff[e as usize] = BigInt::one();
    }
    Ok(s)
}

fn check_params(l: u64, s: u64, v: &[u64]) -> Result<()> {
    if l == 0 || s == 0 {
        return Err(Error::Domain("L and s must be positive".into()));
    }
    if let Some(&k) = v.iter().find(|&&k| k <= s || k > l + s) {
        return Err(Error::Domain(format!("{k} is not in {{s+1..L+s}}")));
    }
    let mut sorted = v.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != v.len() {
        return Err(Error::Domain("V contains a repeated element".into()));
    }
    Ok(())
}

fn product<'a>(factors: impl IntoIterator<Item = &'a Series>, nmax: usize) -> Result<Series> {
    factors
        .into_iter()
        .try_fold(Series::one(nmax), |acc, f| acc.mul(f))
}

/// `prod_{k in V} (1 - q^k)`.
fn v_binomials(v: &[u64], nmax: usize) -> Result<Series> {
    let factors: Vec<Series> = v.iter().map(|&k| Series::one_minus(k, nmax)).collect();
    product(&factors, nmax)
}

/// `prod_{k in V} sum_i q^{k i^t}`, `t = |V|`.
fn v_power_sums(v: &[u64], nmax: usize) -> Result<Series> {
    let t = v.len() as u32;
    let factors = v
        .iter()
        .map(|&k| power_freq_series(k, t, nmax))
        .collect::<Result<Vec<_>>>()?;
    product(&factors, nmax)
}

/// `q^s / (q^s; q)_{L+1}`.
fn smallest_part_s(l: u64, s: u64, nmax: usize) -> Result<Series> {
    Series::monomial(s, nmax).mul(&inv_pochhammer(s, l + 1, nmax)?)
}

/// `H = q^s prod(1 - q^k) / (q^s;q)_{L+1} - (1/(q^{s+1};q)_L - 1)`.
pub fn h_series(l: u64, s: u64, v: &[u64], nmax: usize) -> Result<Series> {
    check_params(l, s, v)?;
    let first = smallest_part_s(l, s, nmax)?.mul(&v_binomials(v, nmax)?)?;
    let second = inv_pochhammer(s + 1, l, nmax)?.sub(&Series::one(nmax))?;
    first.sub(&second)
}

/// `H' = prod(1 - q^k) [ q^s / (q^s;q)_{L+1} - prod_k sum_i q^{k i^t} / (q^{s+1};q)_L ]`.
pub fn hprime_series(l: u64, s: u64, v: &[u64], nmax: usize) -> Result<Series> {
    check_params(l, s, v)?;
    let binoms = v_binomials(v, nmax)?;
    let first = smallest_part_s(l, s, nmax)?.mul(&binoms)?;
    let second = inv_pochhammer(s + 1, l, nmax)?
        .mul(&binoms)?
        .mul(&v_power_sums(v, nmax)?)?;
    first.sub(&second)
}

/// `H'' = q^s / (q^s;q)_{L+1} - prod_k sum_i q^{k i^t} / (q^{s+1};q)_L`.
pub fn hdoubleprime_series(l: u64, s: u64, v: &[u64], nmax: usize) -> Result<Series> {
    check_params(l, s, v)?;
    let first = smallest_part_s(l, s, nmax)?;
    let second = inv_pochhammer(s + 1, l, nmax)?.mul(&v_power_sums(v, nmax)?)?;
    first.sub(&second)
}

/// Sign class of a terminal run of coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RunSign {
    Zero,
    Nonpositive,
    Nonnegative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignReport {
    pub nmax: usize,
    pub last_negative: Option<usize>,
    pub last_positive: Option<usize>,
    /// Start of the longest suffix with all coefficients `<= 0`.
    pub nonpositive_from: Option<usize>,
    /// Start of the longest suffix with all coefficients `>= 0`.
    pub nonnegative_from: Option<usize>,
    /// The longer of the two terminal runs (`zero` for the zero series).
    pub terminal_sign: RunSign,
    pub terminal_from: usize,
}

pub fn sign_scan(x: &Series) -> SignReport {
    let c = x.coeffs();
    let last_negative = c.iter().rposition(Signed::is_negative);
    let last_positive = c.iter().rposition(Signed::is_positive);
    let nmax = x.nmax();
    let after = |last: Option<usize>| match last {
        None => Some(0),
        Some(i) if i < nmax => Some(i + 1),
        Some(_) => None,
    };
    let nonpositive_from = after(last_positive);
    let nonnegative_from = after(last_negative);
    let (terminal_sign, terminal_from) = match (nonpositive_from, nonnegative_from) {
        (Some(0), Some(0)) => (RunSign::Zero, 0),
        (Some(a), Some(b)) if a <= b => (RunSign::Nonpositive, a),
        (_, Some(b)) => (RunSign::Nonnegative, b),
        (Some(a), None) => (RunSign::Nonpositive, a),
        (None, None) => unreachable!("the last coefficient has a sign"),
    };
    SignReport {
        nmax,
        last_negative,
        last_positive,
        nonpositive_from,
        nonnegative_from,
        terminal_sign,
        terminal_from,
    }
}
