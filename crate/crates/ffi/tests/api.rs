use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use quiverhh_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = qhh_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn fixture(name: &str) -> CString {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "tests", "fixtures", name].iter().collect();
    c(&std::fs::read_to_string(p).unwrap())
}

fn dsl_status(text: &CString) -> QhhStatus {
    let mut out = ptr::null_mut();
    let s = unsafe { qhh_report_dsl(text.as_ptr(), &mut out) };
    unsafe { qhh_report_free(out) };
    s
}

#[test]
fn family_report() {
    let mut out = ptr::null_mut();
    let (fam, field, q) = (c("torus-s"), c("rational"), c("1"));
    let s = unsafe { qhh_report_family(fam.as_ptr(), field.as_ptr(), q.as_ptr(), ptr::null(), &mut out) };
    assert_eq!(s, QhhStatus::Ok);
    assert!(qhh_last_error().is_null());
    unsafe {
        assert_eq!(qhh_report_hh_len(out), 4);
        let dims: Vec<i64> = (0..3).map(|n| qhh_report_hh(out, n)).collect();
        assert_eq!(dims, [1, 2, 1]);
        assert_eq!(qhh_report_hh(out, 99), -1);
        assert_eq!(qhh_report_cup_rank(out), 1);
        assert_eq!(qhh_report_bracket_rank(out), 0);
        let json = CStr::from_ptr(qhh_report_json(out)).to_str().unwrap();
        assert!(json.contains("\"family\": \"torus-s\""));
        qhh_report_free(out);
    }
}

#[test]
fn psi_report() {
    let mut out = ptr::null_mut();
    let (fam, psi) = (c("p1p1"), c("ee:1"));
    let s = unsafe { qhh_report_family(fam.as_ptr(), ptr::null(), ptr::null(), psi.as_ptr(), &mut out) };
    assert_eq!(s, QhhStatus::Ok);
    unsafe {
        assert_eq!((0..3).map(|n| qhh_report_hh(out, n)).collect::<Vec<_>>(), [1, 3, 6]);
        qhh_report_free(out);
    }
}

#[test]
fn dsl_report() {
    let mut out = ptr::null_mut();
    let s = unsafe { qhh_report_dsl(fixture("a3.quiver").as_ptr(), &mut out) };
    assert_eq!(s, QhhStatus::Ok);
    unsafe {
        assert_eq!(qhh_report_hh(out, 0), 1);
        assert_eq!(qhh_report_hh(out, 1), 0);
        qhh_report_free(out);
    }
}

#[test]
fn status_codes_match_exit_codes() {
    assert_eq!(dsl_status(&fixture("malformed.quiver")), QhhStatus::Parse);
    assert!(!last_error().is_empty());
    assert_eq!(dsl_status(&fixture("rewrite_cycle.quiver")), QhhStatus::NonConfluent);
    assert_eq!(dsl_status(&fixture("commuting_loops.quiver")), QhhStatus::InfiniteDimensional);
    assert_eq!(QhhStatus::Parse as i32, 2);
    assert_eq!(QhhStatus::Consistency as i32, 5);
}

#[test]
fn bad_arguments() {
    let mut out = ptr::null_mut();
    let fam = c("nope");
    let s = unsafe { qhh_report_family(fam.as_ptr(), ptr::null(), ptr::null(), ptr::null(), &mut out) };
    assert_eq!(s, QhhStatus::Parse);
    assert!(out.is_null());
    let s = unsafe { qhh_report_family(ptr::null(), ptr::null(), ptr::null(), ptr::null(), &mut out) };
    assert_eq!(s, QhhStatus::Parse);
    let kr = c("kronecker");
    let s = unsafe { qhh_report_family(kr.as_ptr(), ptr::null(), ptr::null(), ptr::null(), ptr::null_mut()) };
    assert_eq!(s, QhhStatus::Parse);
    let bad = [0xffu8, 0];
    let s = unsafe { qhh_report_dsl(bad.as_ptr().cast(), &mut out) };
    assert_eq!(s, QhhStatus::Parse);
    assert!(last_error().contains("UTF-8"));
}

#[test]
fn null_handles_are_harmless() {
    unsafe {
        assert!(qhh_report_json(ptr::null()).is_null());
        assert_eq!(qhh_report_hh_len(ptr::null()), 0);
        assert_eq!(qhh_report_hh(ptr::null(), 0), -1);
        assert_eq!(qhh_report_cup_rank(ptr::null()), -1);
        qhh_report_free(ptr::null_mut());
    }
}

#[test]
fn version_and_checks() {
    let v = unsafe { CStr::from_ptr(qhh_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
    assert_eq!(qhh_run_checks(0, 20240917), QhhStatus::Ok);
}

#[test]
fn header_declares_the_api() {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "include", "quiverhh.h"].iter().collect();
    let h = std::fs::read_to_string(&path).unwrap();
    for name in [
        "QHH_STATUS_OK",
        "QHH_STATUS_CONSISTENCY",
        "typedef struct QhhReport QhhReport;",
        "qhh_report_family",
        "qhh_report_dsl",
        "qhh_report_json",
        "qhh_report_hh",
        "qhh_report_free",
        "qhh_run_checks",
        "qhh_last_error",
        "qhh_version",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
    if let Ok(st) = Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&path).status() {
        assert!(st.success(), "header does not compile");
    }
}
