// SPDX-License-Identifier: Apache-2.0

//! C ABI over `xmodcat`. Every function returns an [`XmcStatus`]; on failure
//! the message is available from [`xmc_last_error_message`] on the same thread.
//! Strings returned through `char **` belong to the caller and are released
//! with [`xmc_string_free`]; handles are released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use xmodcat::catgroup::{build_catgroup, check_axioms, GradedCatGroup};
use xmodcat::crossed::{BraidedGammaCrossedModule, ValidatedModule};
use xmodcat::group::FiniteGroup;
use xmodcat::report::Report;
use xmodcat::scenario::{module_from_json, parse_scenario, render_json, run_scenario};

/// Status codes; `1`–`3` match the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XmcStatus {
    Ok = 0,
    ClaimFailed = 1,
    InvalidInput = 2,
    GuardTripped = 3,
    NullPointer = 4,
    Panic = 5,
}

/// A finite group given by its Cayley table.
pub struct XmcGroup(Arc<FiniteGroup>);

/// A braided Γ-crossed module, validated or not.
pub struct XmcModule {
    raw: BraidedGammaCrossedModule,
    valid: Option<ValidatedModule>,
}

/// The graded categorical group of a validated module.
pub struct XmcCatGroup(GradedCatGroup);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn fail(status: XmcStatus, msg: impl Into<String>) -> XmcStatus {
    set_error(msg);
    status
}

fn guarded(body: impl FnOnce() -> XmcStatus) -> XmcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p.downcast_ref::<&str>().map(|s| s.to_string()).or_else(|| p.downcast_ref::<String>().cloned()).unwrap_or_else(|| "panic".into());
            fail(XmcStatus::Panic, msg)
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, XmcStatus> {
    if s.is_null() {
        return Err(fail(XmcStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(XmcStatus::InvalidInput, "string is not UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) {
    *out = CString::new(s).expect("JSON has no nul").into_raw();
}

fn report_string(r: &Report) -> String {
    serde_json::to_string(r).expect("report serializes")
}

/// Copy of the last error message on this thread, or NULL if none.
/// Release it with `xmc_string_free`.
#[no_mangle]
pub extern "C" fn xmc_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null_mut(), |s| s.clone().into_raw()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn xmc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a group from a row-major `order × order` table with identity 0.
///
/// # Safety
/// `table` must point to `order * order` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn xmc_group_from_table(table: *const usize, order: usize, out: *mut *mut XmcGroup) -> XmcStatus {
    guarded(|| {
        if table.is_null() || out.is_null() {
            return fail(XmcStatus::NullPointer, "null argument");
        }
        let Some(len) = order.checked_mul(order) else {
            return fail(XmcStatus::InvalidInput, "order too large");
        };
        let flat = std::slice::from_raw_parts(table, len);
        let rows: Vec<Vec<usize>> = flat.chunks(order.max(1)).map(<[usize]>::to_vec).collect();
        match FiniteGroup::from_table(&rows) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(XmcGroup(Arc::new(g))));
                XmcStatus::Ok
            }
            Err(e) => fail(XmcStatus::InvalidInput, e.to_string()),
        }
    })
}

/// # Safety
/// `g` must be a live group handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn xmc_group_order(g: *const XmcGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// # Safety
/// `g` must be NULL or a handle from `xmc_group_from_table`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn xmc_group_free(g: *mut XmcGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Parses a module in the scenario JSON form (explicit tables or
/// `{"conjugation": ...}`). Modules failing the axioms are still returned.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn xmc_module_from_json(json: *const c_char, out: *mut *mut XmcModule) -> XmcStatus {
    guarded(|| {
        if out.is_null() {
            return fail(XmcStatus::NullPointer, "null argument");
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let value: serde_json::Value = match serde_json::from_str(text) {
            Ok(v) => v,
            Err(e) => return fail(XmcStatus::InvalidInput, format!("parse error at line {}, column {}: {e}", e.line(), e.column())),
        };
        let m = match module_from_json(&value) {
            Ok(Ok(v)) => XmcModule { raw: (**v.inner()).clone(), valid: Some(v) },
            Ok(Err((raw, _))) => XmcModule { raw, valid: None },
            Err(e) => return fail(XmcStatus::InvalidInput, e.to_string()),
        };
        *out = Box::into_raw(Box::new(m));
        XmcStatus::Ok
    })
}

/// Runs the axiom checks; `Ok` when all pass, `ClaimFailed` otherwise. The
/// per-axiom report is written to `report_json` when it is not NULL.
///
/// # Safety
/// `m` must be a live module handle; `report_json` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn xmc_module_validate(m: *const XmcModule, report_json: *mut *mut c_char) -> XmcStatus {
    guarded(|| {
        let Some(m) = m.as_ref() else {
            return fail(XmcStatus::NullPointer, "null module");
        };
        let r = m.raw.validate();
        if !report_json.is_null() {
            write_string(report_json, report_string(&r));
        }
        if r.passed() {
            XmcStatus::Ok
        } else {
            fail(XmcStatus::ClaimFailed, r.to_string())
        }
    })
}

/// # Safety
/// `m` must be a live module handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn xmc_module_is_symmetric(m: *const XmcModule, out: *mut bool) -> XmcStatus {
    guarded(|| match (m.as_ref(), out.is_null()) {
        (Some(m), false) => {
            *out = m.raw.is_symmetric();
            XmcStatus::Ok
        }
        _ => fail(XmcStatus::NullPointer, "null argument"),
    })
}

/// # Safety
/// `m` must be NULL or a handle from `xmc_module_from_json`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn xmc_module_free(m: *mut XmcModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Builds the graded categorical group; `InvalidInput` if the module fails
/// the axioms.
///
/// # Safety
/// `m` must be a live module handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn xmc_catgroup_build(m: *const XmcModule, out: *mut *mut XmcCatGroup) -> XmcStatus {
    guarded(|| {
        let (Some(m), false) = (m.as_ref(), out.is_null()) else {
            return fail(XmcStatus::NullPointer, "null argument");
        };
        let Some(v) = &m.valid else {
            return fail(XmcStatus::InvalidInput, "module fails the axioms");
        };
        *out = Box::into_raw(Box::new(XmcCatGroup(build_catgroup(v))));
        XmcStatus::Ok
    })
}

/// # Safety
/// `g` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn xmc_catgroup_object_count(g: *const XmcCatGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.objects())
}

/// # Safety
/// `g` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn xmc_catgroup_morphism_count(g: *const XmcCatGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.morphism_count())
}

/// Checks the graded categorical group axioms; see `xmc_module_validate`.
///
/// # Safety
/// `g` must be a live handle; `report_json` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn xmc_catgroup_check(g: *const XmcCatGroup, report_json: *mut *mut c_char) -> XmcStatus {
    guarded(|| {
        let Some(g) = g.as_ref() else {
            return fail(XmcStatus::NullPointer, "null handle");
        };
        let r = check_axioms(&g.0);
        if !report_json.is_null() {
            write_string(report_json, report_string(&r));
        }
        if r.passed() {
            XmcStatus::Ok
        } else {
            fail(XmcStatus::ClaimFailed, r.to_string())
        }
    })
}

/// # Safety
/// `g` must be NULL or a handle from `xmc_catgroup_build`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn xmc_catgroup_free(g: *mut XmcCatGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Runs a scenario given as JSON text. The JSON report, identical to the
/// CLI's `--json` output, is written to `report_json` whenever the status is
/// 0–3.
///
/// # Safety
/// `scenario` must be a nul-terminated string; `report_json` writable.
#[no_mangle]
pub unsafe extern "C" fn xmc_run_scenario_json(scenario: *const c_char, report_json: *mut *mut c_char) -> XmcStatus {
    guarded(|| {
        if report_json.is_null() {
            return fail(XmcStatus::NullPointer, "null argument");
        }
        let text = match read_str(scenario) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let res = parse_scenario(text, None).and_then(|s| run_scenario(&s));
        write_string(report_json, render_json(&res));
        match res {
            Ok(o) if o.passed => XmcStatus::Ok,
            Ok(o) => fail(XmcStatus::ClaimFailed, o.text),
            Err(e) => fail(if e.exit_code() == 3 { XmcStatus::GuardTripped } else { XmcStatus::InvalidInput }, e.to_string()),
        }
    })
}
