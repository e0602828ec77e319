use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use partineq_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { pq_string_free(s) };
    out
}

fn last_error() -> String {
    let p = pq_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn class(l: u64, s: u64, v: &[u64], kind: &str) -> *mut PqClass {
    let kind = CString::new(kind).unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { pq_class_new(l, s, v.as_ptr(), v.len(), kind.as_ptr(), &mut out) };
    assert_eq!(st, PqStatus::Ok);
    out
}

fn partition(json: &str) -> *mut PqPartition {
    let json = CString::new(json).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { pq_partition_from_json(json.as_ptr(), &mut out) }, PqStatus::Ok);
    out
}

#[test]
fn count_table() {
    let c = class(3, 1, &[2, 3], "I");
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { pq_count_series(c, 40, &mut t) }, PqStatus::Ok);
    assert_eq!(unsafe { pq_count_table_len(t) }, 41);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pq_count_table_get(t, 5, &mut s) }, PqStatus::Ok);
    // parts in {1, 4} with a 1: 1^5, 1^1 4^1
    assert_eq!(take(s), "2");
    assert_eq!(unsafe { pq_count_table_get(t, 41, &mut s) }, PqStatus::Domain);
    assert!(last_error().contains("41"));
    unsafe {
        pq_count_table_free(t);
        pq_class_free(c);
    }
}

#[test]
fn map_round_trip() {
    let c = class(3, 1, &[2, 3], "I");
    let p = partition(r#"[["1","28"]]"#);
    let map = CString::new("t1").unwrap();
    let (mut image, mut trace) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { pq_map_apply(map.as_ptr(), p, c, &mut image, &mut trace) }, PqStatus::Ok);
    assert!(take(trace).contains(r#""case":"1a""#));
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { pq_partition_to_json(image, &mut json) }, PqStatus::Ok);
    assert_eq!(take(json), r#"[["2","2"],["3","8"]]"#);
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { pq_partition_weight(image, &mut w) }, PqStatus::Ok);
    assert_eq!(take(w), "28");

    let (mut back, mut trace) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { pq_map_recover(map.as_ptr(), image, c, &mut back, &mut trace) }, PqStatus::Ok);
    take(trace);
    let mut json = ptr::null_mut();
    unsafe { pq_partition_to_json(back, &mut json) };
    assert_eq!(take(json), r#"[["1","28"]]"#);
    unsafe {
        pq_partition_free(back);
        pq_partition_free(image);
        pq_partition_free(p);
        pq_class_free(c);
    }
}

#[test]
fn membership_and_errors() {
    let i = class(3, 1, &[2, 3], "I");
    let p_class = class(3, 1, &[2, 3], "P");
    let p = partition(r#"[["1","2"],["4","1"]]"#);
    let mut member = false;
    assert_eq!(unsafe { pq_is_member(p, i, &mut member) }, PqStatus::Ok);
    assert!(member);
    assert_eq!(unsafe { pq_is_member(p, p_class, &mut member) }, PqStatus::UnsupportedPredicate);
    assert_eq!(unsafe { pq_is_member(ptr::null(), i, &mut member) }, PqStatus::NullPointer);

    let d = class(3, 1, &[2, 3], "D");
    let map = CString::new("t1").unwrap();
    let (mut image, mut trace) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { pq_map_apply(map.as_ptr(), p, d, &mut image, &mut trace) }, PqStatus::Domain);
    assert!(image.is_null() && trace.is_null());
    let bad = CString::new("t9").unwrap();
    assert_eq!(unsafe { pq_map_apply(bad.as_ptr(), p, i, &mut image, &mut trace) }, PqStatus::UnknownName);

    let mut out = ptr::null_mut();
    let kind = CString::new("Q").unwrap();
    assert_ne!(unsafe { pq_class_new(3, 1, ptr::null(), 0, kind.as_ptr(), &mut out) }, PqStatus::Ok);
    let junk = CString::new("{").unwrap();
    let mut q = ptr::null_mut();
    assert_eq!(unsafe { pq_partition_from_json(junk.as_ptr(), &mut q) }, PqStatus::Parse);
    unsafe {
        pq_partition_free(p);
        pq_class_free(i);
        pq_class_free(p_class);
        pq_class_free(d);
    }
}

#[test]
fn frobenius_and_version() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pq_frobenius_number(5, 9, &mut s) }, PqStatus::Ok);
    assert_eq!(take(s), "31");
    assert_eq!(unsafe { pq_frobenius_number(6, 8, &mut s) }, PqStatus::Domain);
    let v = unsafe { CStr::from_ptr(pq_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let header = dir.join("partineq.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["pq_map_apply", "pq_count_series", "PQ_STATUS_BOUND_NOT_MET", "typedef struct PqPartition PqPartition"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    for (compiler, lang) in [("cc", "c"), ("c++", "c++")] {
        let status = Command::new(compiler)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
            .arg(&header)
            .status();
        match status {
            Ok(s) => assert!(s.success(), "{compiler} rejected the header"),
            Err(_) => eprintln!("{compiler} not found; skipped"),
        }
    }
}
