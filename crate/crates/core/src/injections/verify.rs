//! Exhaustive injectivity checks over all domain members of one weight.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::t1::{t1_interval, T1Params};
use super::t3::EtaConstants;
use super::trace::MapId;
use super::{apply, recover, Mapped};
use crate::counting::enumerate_class;
use crate::error::{Error, Result};
use crate::partition::{is_member, ClassParams, Kind, Partition};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub preimage: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub map: MapId,
    pub n: u64,
    pub domain_size: usize,
    pub mapped: usize,
    pub per_case: BTreeMap<String, usize>,
    pub bound_not_met: usize,
    pub out_of_scope: usize,
    /// Up to ten example messages for unmet bounds.
    pub diagnostics: Vec<String>,
    pub failures: Vec<Failure>,
    pub collisions: usize,
}

impl VerifyReport {
    /// No assertion failed and no two images coincide.
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty() && self.collisions == 0
    }
}

enum Outcome {
    Mapped(String, Partition),
    Skipped(Error),
    Failed(Failure),
}

fn domain_kind(map: MapId) -> Kind {
    match map {
        MapId::T1 => Kind::I,
        MapId::T3 | MapId::Alt => Kind::DV,
    }
}

fn target_kind(map: MapId) -> Kind {
    match map {
        MapId::T1 => Kind::D,
        MapId::T3 | MapId::Alt => Kind::I,
    }
}

/// Checks an image against the region its case promises.
fn region_ok(map: MapId, c: &ClassParams, m: &Mapped) -> Result<bool> {
    Ok(match map {
        MapId::T1 => {
            let tp = T1Params::new(c)?;
            t1_interval(&tp, &m.image.frequency(tp.k2)) == Some(m.trace.case)
        }
        MapId::T3 => {
            let k = EtaConstants::new(c)?;
            k.classify(&m.image.frequency(c.s())).map(|r| r.index) == m.trace.case.t3_region()
        }
        MapId::Alt => {
            let f = m.image.frequency(c.s());
            let floor = 7u64 * (1u64 << (c.t() + 1)) + 1;
            f.bit(0) && f >= floor.into()
        }
    })
}

fn check_one(map: MapId, c: &ClassParams, target: &ClassParams, p: &Partition) -> Outcome {
    let fail = |reason: String| Outcome::Failed(Failure { preimage: p.to_json(), reason });
    let m = match apply(map, p, c) {
        Ok(m) => m,
        Err(e @ (Error::BoundNotMet(_) | Error::OutOfScope(_))) => return Outcome::Skipped(e),
        Err(e) => return fail(e.to_string()),
    };
    if m.image.weight() != p.weight() {
        return fail("weight not preserved".into());
    }
    match is_member(&m.image, target) {
        Ok(true) => {}
        Ok(false) => return fail(format!("image is not in class {}", target.kind())),
        Err(e) => return fail(e.to_string()),
    }
    match region_ok(map, c, &m) {
        Ok(true) => {}
        Ok(false) => return fail(format!("image lies outside the region of case {}", m.trace.case)),
        Err(e) => return fail(e.to_string()),
    }
    match recover(map, &m.image, c) {
        Ok(r) if r.preimage == *p && r.trace == m.trace => {}
        Ok(_) => return fail("recovery returned a different preimage".into()),
        Err(e) => return fail(format!("recovery failed: {e}")),
    }
    Outcome::Mapped(m.trace.case.to_string(), m.image)
}

/// Applies `map` to every partition in `domain`, in parallel, and checks
/// each result; distinctness of the images is checked afterwards.
pub fn verify_partitions(
    c: &ClassParams,
    map: MapId,
    n: u64,
    domain: &[Partition],
) -> Result<VerifyReport> {
    let c = c.with_kind(domain_kind(map))?;
    let target = c.with_kind(target_kind(map))?;
    let outcomes: Vec<Outcome> = domain
        .par_iter()
        .map(|p| check_one(map, &c, &target, p))
        .collect();
    let mut report = VerifyReport {
        map,
        n,
        domain_size: domain.len(),
        mapped: 0,
        per_case: BTreeMap::new(),
        bound_not_met: 0,
        out_of_scope: 0,
        diagnostics: Vec::new(),
        failures: Vec::new(),
        collisions: 0,
    };
    let mut images = Vec::new();
    for o in outcomes {
        match o {
            Outcome::Mapped(case, image) => {
                report.mapped += 1;
                *report.per_case.entry(case).or_default() += 1;
                images.push(image);
            }
            Outcome::Skipped(e) => {
                if matches!(e, Error::OutOfScope(_)) {
                    report.out_of_scope += 1;
                } else {
                    report.bound_not_met += 1;
                }
                if report.diagnostics.len() < 10 {
                    report.diagnostics.push(e.to_string());
                }
            }
            Outcome::Failed(f) => report.failures.push(f),
        }
    }
    images.sort_unstable();
    report.collisions = images.windows(2).filter(|w| w[0] == w[1]).count();
    Ok(report)
}

/// Enumerates the domain class at weight `n` and verifies `map` on it.
pub fn verify_injection(c: &ClassParams, map: MapId, n: u64) -> Result<VerifyReport> {
    let c = c.with_kind(domain_kind(map))?;
    match map {
        MapId::T1 => {
            T1Params::new(&c)?;
        }
        MapId::T3 => {
            EtaConstants::new(&c)?;
        }
        MapId::Alt => {}
    }
    let domain = enumerate_class(&c, n)?;
    verify_partitions(&c, map, n, &domain)
}
