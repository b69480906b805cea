use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use alphasectors_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(as_last_error()).to_string_lossy().into_owned() }
}

fn fig1() -> *mut AsFunction {
    let a = [0.1, 1.0, 4.0];
    let b = [1.0, 5.0];
    let mut f = ptr::null_mut();
    let s = unsafe { as_function_rational(-1, 3, a.as_ptr(), a.len(), b.as_ptr(), b.len(), &mut f) };
    assert_eq!(s, AsStatus::Ok);
    f
}

#[test]
fn fig1_round_trip() {
    let f = fig1();
    let alpha = AsComplex { re: -1.0, im: -1.0 };
    let mut set = ptr::null_mut();
    assert_eq!(unsafe { as_alpha_points(f, alpha, 10.0, &mut set) }, AsStatus::Ok);
    assert_eq!(unsafe { as_point_set_len(set) }, 9);
    let mut p = AsPoint::default();
    for i in 0..9 {
        assert_eq!(unsafe { as_point_set_get(set, i, &mut p) }, AsStatus::Ok);
        let mut v = AsComplex::default();
        assert_eq!(unsafe { as_function_evaluate(f, AsComplex { re: p.re, im: p.im }, &mut v) }, AsStatus::Ok);
        assert!(((v.re + 1.0).powi(2) + (v.im + 1.0).powi(2)).sqrt() < 1e-9);
    }
    let mut passed = 0;
    assert_eq!(unsafe { as_verify(f, set, alpha, AsTheorem::Main as i32, &mut passed) }, AsStatus::Ok);
    assert_eq!(passed, 1);
    assert_eq!(unsafe { as_verify(f, set, alpha, 99, &mut passed) }, AsStatus::InvalidArgument);

    let mut counts = [0u32; 6];
    assert_eq!(unsafe { as_census(f, alpha, 0.01, 10.0, counts.as_mut_ptr(), counts.len()) }, AsStatus::Ok);
    assert_eq!(counts.iter().sum::<u32>(), 9);
    assert_eq!(unsafe { as_census(f, alpha, 0.01, 10.0, counts.as_mut_ptr(), 2) }, AsStatus::OutOfRange);
    unsafe {
        as_point_set_free(set);
        as_function_free(f);
    }
}

#[test]
fn error_codes() {
    let mut f = ptr::null_mut();
    let bad = CString::new(r#"{"type":"rational","p":2,"k":4,"a":[1]}"#).unwrap();
    assert_eq!(unsafe { as_function_from_json(bad.as_ptr(), &mut f) }, AsStatus::InvalidSpec);
    assert!(!last_error().is_empty());
    assert!(f.is_null());
    assert_eq!(unsafe { as_function_from_json(ptr::null(), &mut f) }, AsStatus::NullPointer);
    let junk = [0xffu8, 0xfe, 0];
    assert_eq!(unsafe { as_function_from_json(junk.as_ptr().cast(), &mut f) }, AsStatus::Utf8);

    let f = fig1();
    let mut v = AsComplex::default();
    assert_eq!(unsafe { as_function_evaluate(f, AsComplex { re: 1.0, im: 0.0 }, &mut v) }, AsStatus::Pole);
    assert_eq!(unsafe { as_function_evaluate(f, AsComplex { re: 0.5, im: 0.0 }, ptr::null_mut()) }, AsStatus::NullPointer);
    unsafe { as_function_free(f) };
    assert_eq!(unsafe { as_point_set_len(ptr::null()) }, 0);
}

#[test]
fn next_sector() {
    let mut out = 0;
    assert_eq!(unsafe { as_predict_next_sector(-1, 3, 3, 0, &mut out) }, AsStatus::Ok);
    assert_eq!(out, 3);
    assert_eq!(unsafe { as_predict_next_sector(2, 4, 1, 0, &mut out) }, AsStatus::InvalidSpec);
    assert_eq!(unsafe { as_predict_next_sector(1, 3, 6, 0, &mut out) }, AsStatus::OutOfRange);
}

#[test]
fn series_spec() {
    let json = CString::new(r#"{"type":"series","family":"partial-theta","q":{"re":0.3,"im":0},"N":40}"#).unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { as_function_from_json(json.as_ptr(), &mut f) }, AsStatus::Ok);
    let mut v = AsComplex::default();
    assert_eq!(unsafe { as_function_evaluate(f, AsComplex { re: 0.0, im: 0.0 }, &mut v) }, AsStatus::Ok);
    assert_eq!(v.re, 1.0);
    assert_eq!(unsafe { as_function_evaluate(f, AsComplex { re: 1e9, im: 0.0 }, &mut v) }, AsStatus::OutOfRange);
    unsafe { as_function_free(f) };
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn c_smoke_test() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = root.join("include").join("alphasectors.h");
    assert!(header.exists(), "header not generated");
    let target = std::env::var_os("CARGO_TARGET_DIR").map(PathBuf::from).unwrap_or_else(|| root.join("../../target"));
    let lib = target.join("debug").join("libalphasectors_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let exe = tempfile::tempdir().unwrap().keep().join("smoke");
    let st = Command::new("cc")
        .arg(root.join("tests").join("smoke.c"))
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(st.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "smoke test exited with {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "9");
}
