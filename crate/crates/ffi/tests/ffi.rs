// SPDX-License-Identifier: Apache-2.0

use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use xmodcat_ffi::*;

fn corpus(name: &str) -> CString {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(format!("{name}.json"));
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

fn module_text(scenario: &str) -> CString {
    let v: serde_json::Value = serde_json::from_str(corpus(scenario).to_str().unwrap()).unwrap();
    CString::new(v["input"]["module"].to_string()).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    xmc_string_free(s);
    out
}

#[test]
fn group_handles() {
    unsafe {
        let table: [usize; 9] = [0, 1, 2, 1, 2, 0, 2, 0, 1];
        let mut g = ptr::null_mut();
        assert_eq!(xmc_group_from_table(table.as_ptr(), 3, &mut g), XmcStatus::Ok);
        assert_eq!(xmc_group_order(g), 3);
        xmc_group_free(g);

        let bad: [usize; 4] = [0, 1, 0, 1];
        assert_eq!(xmc_group_from_table(bad.as_ptr(), 2, &mut g), XmcStatus::InvalidInput);
        assert!(!take(xmc_last_error_message()).is_empty());
        assert_eq!(xmc_group_from_table(ptr::null(), 2, &mut g), XmcStatus::NullPointer);
        assert_eq!(xmc_group_order(ptr::null()), 0);
    }
}

#[test]
fn module_to_catgroup() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(xmc_module_from_json(module_text("validate_s3_a3").as_ptr(), &mut m), XmcStatus::Ok);
        let mut report = ptr::null_mut();
        assert_eq!(xmc_module_validate(m, &mut report), XmcStatus::Ok);
        let r: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert!(r["checks"].as_array().unwrap().iter().all(|c| c["failures"] == 0));
        let mut sym = true;
        assert_eq!(xmc_module_is_symmetric(m, &mut sym), XmcStatus::Ok);

        let mut g = ptr::null_mut();
        assert_eq!(xmc_catgroup_build(m, &mut g), XmcStatus::Ok);
        // objects are the elements of D = S3, morphisms are pairs (b, σ) over each object
        assert_eq!(xmc_catgroup_object_count(g), 6);
        assert!(xmc_catgroup_morphism_count(g) > 0);
        assert_eq!(xmc_catgroup_check(g, ptr::null_mut()), XmcStatus::Ok);
        xmc_catgroup_free(g);
        xmc_module_free(m);
    }
}

#[test]
fn failing_module_reports_claim_failure() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(xmc_module_from_json(module_text("validate_broken_eta").as_ptr(), &mut m), XmcStatus::Ok);
        let mut report = ptr::null_mut();
        assert_eq!(xmc_module_validate(m, &mut report), XmcStatus::ClaimFailed);
        let r: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert!(r["checks"].as_array().unwrap().iter().any(|c| c["failures"].as_u64().unwrap() > 0 && !c["witnesses"].as_array().unwrap().is_empty()));
        assert!(take(xmc_last_error_message()).contains("FAIL"));
        let mut g = ptr::null_mut();
        assert_eq!(xmc_catgroup_build(m, &mut g), XmcStatus::InvalidInput);
        assert!(g.is_null());
        xmc_module_free(m);
    }
}

#[test]
fn scenario_status_matches_exit_codes() {
    for (name, status) in [
        ("classify_z2_z2", XmcStatus::Ok),
        ("validate_broken_eta", XmcStatus::ClaimFailed),
        ("malformed", XmcStatus::InvalidInput),
        ("guard_schreier", XmcStatus::GuardTripped),
    ] {
        unsafe {
            let mut report = ptr::null_mut();
            assert_eq!(xmc_run_scenario_json(corpus(name).as_ptr(), &mut report), status, "{name}");
            let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
            assert_eq!(v["schema_version"], 1, "{name}");
        }
    }
}

#[test]
fn report_matches_golden() {
    unsafe {
        let mut report = ptr::null_mut();
        assert_eq!(xmc_run_scenario_json(corpus("cohomology_h2_z2_z2").as_ptr(), &mut report), XmcStatus::Ok);
        let got: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus/expected/cohomology_h2_z2_z2.json");
        let want: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        assert_eq!(got, want);
    }
}

#[test]
fn c_smoke_test() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found, skipping");
        return;
    };
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    // integration tests live in target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().unwrap().parent().unwrap();
    let lib = lib_dir.join("libxmodcat_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built, skipping", lib.display());
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let bin = tmp.path().join("smoke");
    let status = Command::new(cc)
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "{:?} {}", out.status, String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}

fn which_cc() -> Result<String, ()> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().map(|_| cc).map_err(|_| ())
}
