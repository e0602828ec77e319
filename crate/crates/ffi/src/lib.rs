//! C ABI for `partineq-core`.
//!
//! Every fallible function returns a [`PqStatus`] and writes its result
//! through an out-pointer. On failure the message is available from
//! [`pq_last_error`] on the same thread. Objects are opaque handles released
//! by their `_free` function; strings returned by the library are released by
//! [`pq_string_free`]. Arbitrary-precision integers cross the boundary as
//! decimal strings.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigUint;
use partineq::counting::{count_series, CountTable};
use partineq::frobenius::frobenius_number;
use partineq::injections::{apply, recover, MapId};
use partineq::partition::{is_member, ClassParams, Kind, Partition};
use partineq::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Domain = 3,
    Membership = 4,
    UnsupportedPredicate = 5,
    Parse = 6,
    NoSolution = 7,
    Precondition = 8,
    BoundNotMet = 9,
    NotInRange = 10,
    OutOfScope = 11,
    Resource = 12,
    UnknownName = 13,
    MismatchedOrder = 14,
    Panic = 15,
}

impl From<&Error> for PqStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain(_) => PqStatus::Domain,
            Error::Membership(_) => PqStatus::Membership,
            Error::UnsupportedPredicate => PqStatus::UnsupportedPredicate,
            Error::Parse(_) => PqStatus::Parse,
            Error::NoSolution { .. } => PqStatus::NoSolution,
            Error::Precondition(_) => PqStatus::Precondition,
            Error::BoundNotMet(_) => PqStatus::BoundNotMet,
            Error::NotInRange(_) => PqStatus::NotInRange,
            Error::OutOfScope(_) => PqStatus::OutOfScope,
            Error::Resource(_) => PqStatus::Resource,
            Error::UnknownName(_) => PqStatus::UnknownName,
            Error::MismatchedOrder(..) => PqStatus::MismatchedOrder,
        }
    }
}

/// Partition class parameters `(L, s, V, kind)`.
pub struct PqClass(ClassParams);

/// A partition stored as part/frequency pairs.
pub struct PqPartition(Partition);

/// Class counts for weights `0..=nmax`.
pub struct PqCountTable(CountTable);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

struct Fail(PqStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(PqStatus::from(&e), e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> PqStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PqStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            PqStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(PqStatus::NullPointer, format!("{what} is null")))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(PqStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(PqStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(PqStatus::NullPointer, format!("{what} is null")));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pq_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn pq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds class parameters. `kind` is one of `I, D, DV, E, S, P`; `v` points
/// to `v_len` parts and may be null when `v_len` is zero.
///
/// # Safety
/// `v` must be valid for `v_len` reads; `kind` must be a C string.
#[no_mangle]
pub unsafe extern "C" fn pq_class_new(
    l: u64,
    s: u64,
    v: *const u64,
    v_len: usize,
    kind: *const c_char,
    out: *mut *mut PqClass,
) -> PqStatus {
    guard(|| {
        let parts = if v_len == 0 {
            Vec::new()
        } else if v.is_null() {
            return Err(Fail(PqStatus::NullPointer, "v is null".into()));
        } else {
            std::slice::from_raw_parts(v, v_len).to_vec()
        };
        let kind: Kind = text(kind, "kind")?.parse()?;
        let c = ClassParams::new(l, s, parts, kind)?;
        write(out, Box::into_raw(Box::new(PqClass(c))), "out")
    })
}

/// # Safety
/// `c` must come from [`pq_class_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pq_class_free(c: *mut PqClass) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Parses a partition from JSON pairs such as `[["1","3"],["4","1"]]`.
///
/// # Safety
/// `json` must be a C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pq_partition_from_json(json: *const c_char, out: *mut *mut PqPartition) -> PqStatus {
    guard(|| {
        let p = Partition::from_json(text(json, "json")?)?;
        write(out, Box::into_raw(Box::new(PqPartition(p))), "out")
    })
}

/// Serializes a partition to JSON; free the result with [`pq_string_free`].
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pq_partition_to_json(p: *const PqPartition, out: *mut *mut c_char) -> PqStatus {
    guard(|| {
        let p = borrow(p, "partition")?;
        write(out, owned_string(p.0.to_json()), "out")
    })
}

/// Weight of a partition as a decimal string.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pq_partition_weight(p: *const PqPartition, out: *mut *mut c_char) -> PqStatus {
    guard(|| {
        let p = borrow(p, "partition")?;
        write(out, owned_string(p.0.weight().to_string()), "out")
    })
}

/// # Safety
/// `p` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pq_partition_free(p: *mut PqPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Class membership test. Class P is not decidable and reports
/// `UnsupportedPredicate`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pq_is_member(p: *const PqPartition, c: *const PqClass, out: *mut bool) -> PqStatus {
    guard(|| {
        let member = is_member(&borrow(p, "partition")?.0, &borrow(c, "class")?.0)?;
        write(out, member, "out")
    })
}

/// Counts class members of every weight up to `nmax`.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pq_count_series(c: *const PqClass, nmax: usize, out: *mut *mut PqCountTable) -> PqStatus {
    guard(|| {
        let table = count_series(&borrow(c, "class")?.0, nmax)?;
        write(out, Box::into_raw(Box::new(PqCountTable(table))), "out")
    })
}

/// Number of entries in the table (`nmax + 1`); zero for null.
///
/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pq_count_table_len(t: *const PqCountTable) -> usize {
    t.as_ref().map_or(0, |t| t.0.counts.len())
}

/// Count at weight `n` as a decimal string.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pq_count_table_get(t: *const PqCountTable, n: usize, out: *mut *mut c_char) -> PqStatus {
    guard(|| {
        let t = borrow(t, "table")?;
        let value = t
            .0
            .get(n)
            .ok_or_else(|| Fail(PqStatus::Domain, format!("weight {n} beyond nmax {}", t.0.nmax)))?;
        write(out, owned_string(value.to_string()), "out")
    })
}

/// # Safety
/// `t` must come from [`pq_count_series`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pq_count_table_free(t: *mut PqCountTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

unsafe fn run_map(
    map: *const c_char,
    p: *const PqPartition,
    c: *const PqClass,
    out_partition: *mut *mut PqPartition,
    out_trace: *mut *mut c_char,
    backwards: bool,
) -> PqStatus {
    guard(|| {
        let map: MapId = text(map, "map")?.parse()?;
        let (p, c) = (&borrow(p, "partition")?.0, &borrow(c, "class")?.0);
        if out_partition.is_null() || out_trace.is_null() {
            return Err(Fail(PqStatus::NullPointer, "output pointer is null".into()));
        }
        let (part, trace) = if backwards {
            let r = recover(map, p, c)?;
            (r.preimage, r.trace)
        } else {
            let m = apply(map, p, c)?;
            (m.image, m.trace)
        };
        write(out_trace, owned_string(trace.to_json()), "out_trace")?;
        write(out_partition, Box::into_raw(Box::new(PqPartition(part))), "out_partition")
    })
}

/// Applies map `t1`, `t3` or `alt` to `p` drawn from the domain described by
/// `c`. Writes the image and its trace as JSON.
///
/// # Safety
/// Handles must be live; `map` must be a C string; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn pq_map_apply(
    map: *const c_char,
    p: *const PqPartition,
    c: *const PqClass,
    out_image: *mut *mut PqPartition,
    out_trace: *mut *mut c_char,
) -> PqStatus {
    run_map(map, p, c, out_image, out_trace, false)
}

/// Inverts a map on its image. Writes the preimage and the trace.
///
/// # Safety
/// Same contract as [`pq_map_apply`].
#[no_mangle]
pub unsafe extern "C" fn pq_map_recover(
    map: *const c_char,
    image: *const PqPartition,
    c: *const PqClass,
    out_preimage: *mut *mut PqPartition,
    out_trace: *mut *mut c_char,
) -> PqStatus {
    run_map(map, image, c, out_preimage, out_trace, true)
}

/// Largest integer not representable as `ax + by` with `x, y >= 0`, as a
/// decimal string. Requires `gcd(a, b) = 1` and `a, b >= 2`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pq_frobenius_number(a: u64, b: u64, out: *mut *mut c_char) -> PqStatus {
    guard(|| {
        let g = frobenius_number(&BigUint::from(a), &BigUint::from(b))?;
        write(out, owned_string(g.to_string()), "out")
    })
}
