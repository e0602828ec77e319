//! Exhaustive exact checks of the two auxiliary inequalities used by the
//! `eta` constructions.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::pairing::cns_rank;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: &'static str,
    pub checked: u64,
    pub violations: Vec<String>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `m_1^t + ... + m_t^t >= (t!/t^t) (C(m_1+...+m_t, t) + ... + C(m_1, 1))`
/// for every `t <= max_t` and every tuple with entries in `[1, max_entry]`.
pub fn check_comb(max_t: u32, max_entry: u64) -> LemmaReport {
    let mut report = LemmaReport { lemma: "comb", checked: 0, violations: Vec::new() };
    for t in 1..=max_t {
        let lhs_scale = BigUint::from(t).pow(t);
        let rhs_scale = factorial(t);
        let mut m = vec![1u64; t as usize];
        loop {
            let entries: Vec<BigUint> = m.iter().map(|&x| BigUint::from(x)).collect();
            let powers: BigUint = entries.iter().map(|x| x.pow(t)).sum();
            let cns = cns_rank(&entries).expect("entries are positive");
            // cleared denominators: t^t * sum m^t >= t! * cns
            if &lhs_scale * &powers < &rhs_scale * &cns {
                report.violations.push(format!("t={t} m={m:?}"));
            }
            report.checked += 1;
            let Some(i) = m.iter().rposition(|&x| x < max_entry) else { break };
            m[i] += 1;
            m[i + 1..].iter_mut().for_each(|x| *x = 1);
        }
    }
    report
}

/// `(1 + 1/h)^t <= 1 + 1/(2s)` for `s, t` in `[1, max]` and
/// `h` in `{2st^2, 2st^2 + 7}`.
pub fn check_crucial1(max: u64) -> LemmaReport {
    let mut report = LemmaReport { lemma: "crucial1", checked: 0, violations: Vec::new() };
    let one = BigRational::one();
    for s in 1..=max {
        let rhs = &one + BigRational::new(BigInt::one(), BigInt::from(2 * s));
        for t in 1..=max {
            for h in [2 * s * t * t, 2 * s * t * t + 7] {
                let base = &one + BigRational::new(BigInt::one(), BigInt::from(h));
                let lhs = num_traits::pow(base, t as usize);
                if lhs > rhs {
                    report.violations.push(format!("s={s} t={t} h={h}"));
                }
                report.checked += 1;
            }
        }
    }
    report
}
