use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::ptr;

use eqtrace_ffi::*;
use serde_json::Value;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = eqtrace_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

unsafe fn take_json(p: *mut c_char) -> Value {
    let v = serde_json::from_str(CStr::from_ptr(p).to_str().unwrap()).unwrap();
    eqtrace_string_free(p);
    v
}

#[test]
fn root_datum_multipliers() {
    unsafe {
        let mut d = ptr::null_mut();
        assert_eq!(eqtrace_root_datum_new(c("A2").as_ptr(), c("root").as_ptr(), &mut d), EqStatus::Ok);
        let mut order = 0u64;
        assert_eq!(eqtrace_root_datum_schur_order(d, &mut order), EqStatus::Ok);
        assert_eq!(order, 3);
        let mut out = ptr::null_mut();
        assert_eq!(eqtrace_root_datum_pi1_json(d, &mut out), EqStatus::Ok);
        assert_eq!(take_json(out)["torsion"], serde_json::json!([3]));
        eqtrace_root_datum_free(d);

        // GL2: characters e1, e2 in (ω, ε) coordinates
        assert_eq!(eqtrace_root_datum_new(c("A1xT1").as_ptr(), c("[[1, 1], [-1, 1]]").as_ptr(), &mut d), EqStatus::Ok);
        assert_eq!(eqtrace_root_datum_schur_order(d, &mut order), EqStatus::Ok);
        assert_eq!(order, 1);
        eqtrace_root_datum_free(d);
    }
}

#[test]
fn groups_and_algebras() {
    unsafe {
        let mut g = ptr::null_mut();
        let a4 = c(r#"{"degree": 4, "generators": [[[1, 2, 3]], [[2, 3, 4]]]}"#);
        assert_eq!(eqtrace_group_from_json(a4.as_ptr(), &mut g), EqStatus::Ok);
        assert_eq!(eqtrace_group_order(g), 12);
        let mut out = ptr::null_mut();
        assert_eq!(eqtrace_group_schur_multiplier_json(g, &mut out), EqStatus::Ok);
        assert_eq!(take_json(out)["torsion"], serde_json::json!([2]));
        eqtrace_group_free(g);

        let mut a = ptr::null_mut();
        let dual = c(r#"{"vertices": ["1"], "arrows": [{"src": "1", "dst": "1", "name": "x"}], "relations": [[{"coeff": 1, "path": ["x", "x"]}]]}"#);
        assert_eq!(eqtrace_algebra_from_json(dual.as_ptr(), &mut a), EqStatus::Ok);
        assert_eq!(eqtrace_algebra_dim(a), 2);
        let mut koszul = false;
        assert_eq!(eqtrace_algebra_is_koszul(a, 4, &mut koszul), EqStatus::Ok);
        assert!(koszul);
        eqtrace_algebra_free(a);
    }
}

#[test]
fn orbit_dims() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(eqtrace_orbit_dims_json(c("E8").as_ptr(), c("2,2,2,2,2,2,2,2").as_ptr(), &mut out), EqStatus::Ok);
        let v = take_json(out);
        assert_eq!(v["orbit"], 240);
        assert_eq!(v["slice"], 8);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut d = ptr::null_mut();
        assert_eq!(eqtrace_root_datum_new(c("Q3").as_ptr(), c("root").as_ptr(), &mut d), EqStatus::InvalidInput);
        assert!(d.is_null());
        assert!(last_error().contains("Q3"), "{}", last_error());
        assert_eq!(eqtrace_root_datum_new(ptr::null(), c("root").as_ptr(), &mut d), EqStatus::NullPointer);
        assert_eq!(eqtrace_root_datum_schur_order(ptr::null(), &mut 0), EqStatus::NullPointer);

        let mut g = ptr::null_mut();
        assert_eq!(eqtrace_group_from_json(c("{").as_ptr(), &mut g), EqStatus::InvalidInput);
        assert_eq!(eqtrace_group_order(ptr::null()), 0);

        let mut passed = true;
        assert_eq!(eqtrace_acceptance_criterion(99, &mut passed), EqStatus::InvalidInput);
        assert_eq!(eqtrace_acceptance_criterion(9, &mut passed), EqStatus::Ok);
        assert!(passed);
        assert!(eqtrace_last_error().is_null());

        eqtrace_string_free(ptr::null_mut());
        assert!(!CStr::from_ptr(eqtrace_version()).to_str().unwrap().is_empty());
    }
}

#[test]
fn header_declares_every_export() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/eqtrace.h")).unwrap();
    let src = std::fs::read_to_string(dir.join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let Ok(status) = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(dir.join("tests/smoke.c"))
        .status()
    else {
        eprintln!("no C compiler; skipped");
        return;
    };
    assert!(status.success());
}
