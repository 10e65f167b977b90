//! C ABI for the lzeta library.
//!
//! Conventions: functions return an [`LzStatus`] code; `LZ_OK` is zero.
//! Results come back through out-pointers. Graph and local-system handles
//! are opaque and must be released with the matching `_free` function;
//! strings returned through `char**` must be released with
//! [`lz_string_free`]. On any non-OK status the thread-local message
//! retrievable via [`lz_last_error_message`] describes the failure.
//!
//! Safety contract for every function here: pointer arguments must be
//! null or valid for the duration of the call, string arguments must be
//! NUL-terminated, and handles must not be used after their `_free`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use lzeta::error::{Error, ErrorCategory};
use lzeta::graph::{GraphMode, Multigraph};
use lzeta::io::{graph_from_json, local_system_from_json, poly_to_strings, AnyLocalSystem};
use lzeta::l2det::l2det_closed;
use lzeta::local_system::LocalSystem;
use lzeta::scalar::{format_rational, parse_rational, rational_to_f64};
use lzeta::with_local_system;
use lzeta::zeta::{
    bass_zeta, edge_zeta, generalized_bass_zeta, laplacian_zeta, t0t1_zeta, verify_main_theorem,
};

/// Status codes returned by every fallible function.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ValidationError = 4,
    BudgetExceeded = 5,
    VerifyFailed = 6,
    InternalError = 7,
}

/// Graph construction mode.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LzGraphMode {
    Regular = 0,
    General = 1,
}

/// Which determinant pipeline computes the zeta polynomial.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LzZetaMethod {
    Bass = 0,
    Edge = 1,
    T0t1 = 2,
    Laplacian = 3,
    GeneralizedBass = 4,
}

/// Opaque graph handle.
pub struct LzGraph {
    inner: Arc<Multigraph>,
}

/// Opaque local-system handle (keeps its graph alive).
pub struct LzLocalSystem {
    inner: AnyLocalSystem,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_last_error(message: &str) {
    let sanitized: String = message.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> LzStatus {
    match err.category() {
        ErrorCategory::Usage => LzStatus::ParseError,
        ErrorCategory::Validation => LzStatus::ValidationError,
        ErrorCategory::Budget => LzStatus::BudgetExceeded,
        ErrorCategory::VerifyFailed => LzStatus::VerifyFailed,
    }
}

fn fail(err: &Error) -> LzStatus {
    set_last_error(&err.to_string());
    status_of(err)
}

fn guard(body: impl FnOnce() -> LzStatus) -> LzStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic");
            LzStatus::InternalError
        }
    }
}

unsafe fn read_utf8<'a>(ptr: *const c_char) -> Result<&'a str, LzStatus> {
    if ptr.is_null() {
        set_last_error("null string pointer");
        return Err(LzStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_last_error("string is not valid UTF-8");
        LzStatus::InvalidUtf8
    })
}

fn emit_string(out: *mut *mut c_char, value: String) -> LzStatus {
    let sanitized: String = value.chars().filter(|&c| c != '\0').collect();
    match CString::new(sanitized) {
        Ok(cstr) => {
            unsafe { *out = cstr.into_raw() };
            LzStatus::Ok
        }
        Err(_) => {
            set_last_error("output contained an interior NUL");
            LzStatus::InternalError
        }
    }
}

/// Copies the last error message into `buffer` (NUL-terminated,
/// truncated to `length` bytes) and returns the full message length in
/// bytes, excluding the terminator. Safe to call with a null buffer to
/// query the length.
#[no_mangle]
pub unsafe extern "C" fn lz_last_error_message(buffer: *mut c_char, length: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let msg = slot.borrow();
        let bytes = msg.as_bytes();
        if !buffer.is_null() && length > 0 {
            let copy = bytes.len().min(length - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buffer, copy);
            *buffer.add(copy) = 0;
        }
        bytes.len()
    })
}

/// Parses graph JSON ({"vertices": n, "edges": [[u, v], ...]}) into a new
/// handle. The handle must be freed with [`lz_graph_free`].
#[no_mangle]
pub unsafe extern "C" fn lz_graph_parse_json(
    json: *const c_char,
    mode: LzGraphMode,
    out: *mut *mut LzGraph,
) -> LzStatus {
    guard(|| {
        if out.is_null() {
            set_last_error("null out pointer");
            return LzStatus::NullPointer;
        }
        let text = match read_utf8(json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let mode = match mode {
            LzGraphMode::Regular => GraphMode::Regular,
            LzGraphMode::General => GraphMode::General,
        };
        match graph_from_json(text, mode) {
            Ok(graph) => {
                *out = Box::into_raw(Box::new(LzGraph {
                    inner: Arc::new(graph),
                }));
                LzStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn lz_graph_free(graph: *mut LzGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

#[no_mangle]
pub unsafe extern "C" fn lz_graph_vertex_count(graph: *const LzGraph) -> u64 {
    graph.as_ref().map_or(0, |g| g.inner.vertex_count() as u64)
}

#[no_mangle]
pub unsafe extern "C" fn lz_graph_edge_count(graph: *const LzGraph) -> u64 {
    graph.as_ref().map_or(0, |g| g.inner.edge_count() as u64)
}

#[no_mangle]
pub unsafe extern "C" fn lz_graph_rank(graph: *const LzGraph) -> u64 {
    graph.as_ref().map_or(0, |g| g.inner.rank() as u64)
}

/// Girth (shortest closed geodesic length); fails on trees.
#[no_mangle]
pub unsafe extern "C" fn lz_graph_girth(graph: *const LzGraph, out: *mut u64) -> LzStatus {
    guard(|| {
        let Some(g) = graph.as_ref() else {
            set_last_error("null graph");
            return LzStatus::NullPointer;
        };
        if out.is_null() {
            set_last_error("null out pointer");
            return LzStatus::NullPointer;
        }
        match g.inner.girth() {
            Ok(girth) => {
                *out = girth as u64;
                LzStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// q such that the graph is (q+1)-regular; fails otherwise.
#[no_mangle]
pub unsafe extern "C" fn lz_graph_regular_q(graph: *const LzGraph, out: *mut u64) -> LzStatus {
    guard(|| {
        let Some(g) = graph.as_ref() else {
            set_last_error("null graph");
            return LzStatus::NullPointer;
        };
        if out.is_null() {
            set_last_error("null out pointer");
            return LzStatus::NullPointer;
        }
        match g.inner.check_regular() {
            Ok(q) => {
                *out = q as u64;
                LzStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// The trivial local system of the given stalk dimension.
#[no_mangle]
pub unsafe extern "C" fn lz_local_system_trivial(
    graph: *const LzGraph,
    dim: u64,
    out: *mut *mut LzLocalSystem,
) -> LzStatus {
    guard(|| {
        let Some(g) = graph.as_ref() else {
            set_last_error("null graph");
            return LzStatus::NullPointer;
        };
        if out.is_null() {
            set_last_error("null out pointer");
            return LzStatus::NullPointer;
        }
        let ls = LocalSystem::trivial(g.inner.clone(), dim as usize);
        *out = Box::into_raw(Box::new(LzLocalSystem {
            inner: AnyLocalSystem::Rational(ls),
        }));
        LzStatus::Ok
    })
}

/// Parses local-system JSON against a graph; the coefficient field is
/// chosen from the entries ("p/q" strings exact, numbers float).
#[no_mangle]
pub unsafe extern "C" fn lz_local_system_parse_json(
    graph: *const LzGraph,
    json: *const c_char,
    out: *mut *mut LzLocalSystem,
) -> LzStatus {
    guard(|| {
        let Some(g) = graph.as_ref() else {
            set_last_error("null graph");
            return LzStatus::NullPointer;
        };
        if out.is_null() {
            set_last_error("null out pointer");
            return LzStatus::NullPointer;
        }
        let text = match read_utf8(json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match local_system_from_json(g.inner.clone(), text) {
            Ok(ls) => {
                *out = Box::into_raw(Box::new(LzLocalSystem { inner: ls }));
                LzStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn lz_local_system_free(ls: *mut LzLocalSystem) {
    if !ls.is_null() {
        drop(Box::from_raw(ls));
    }
}

#[no_mangle]
pub unsafe extern "C" fn lz_local_system_dim(ls: *const LzLocalSystem) -> u64 {
    ls.as_ref().map_or(0, |s| s.inner.dim() as u64)
}

/// Computes the zeta polynomial through the chosen pipeline and returns a
/// JSON report {"method", "degree", "coefficients"} with coefficients as
/// exact "p/q" strings (or float strings in float mode). Free the string
/// with [`lz_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lz_zeta_json(
    ls: *const LzLocalSystem,
    method: LzZetaMethod,
    out_json: *mut *mut c_char,
) -> LzStatus {
    guard(|| {
        let Some(handle) = ls.as_ref() else {
            set_last_error("null local system");
            return LzStatus::NullPointer;
        };
        if out_json.is_null() {
            set_last_error("null out pointer");
            return LzStatus::NullPointer;
        }
        let name = match method {
            LzZetaMethod::Bass => "bass",
            LzZetaMethod::Edge => "edge",
            LzZetaMethod::T0t1 => "t0t1",
            LzZetaMethod::Laplacian => "laplacian",
            LzZetaMethod::GeneralizedBass => "generalized-bass",
        };
        let result = with_local_system!(&handle.inner, sys => {
            match method {
                LzZetaMethod::Bass => bass_zeta(sys),
                LzZetaMethod::Edge => edge_zeta(sys),
                LzZetaMethod::T0t1 => t0t1_zeta(sys),
                LzZetaMethod::Laplacian => laplacian_zeta(sys),
                LzZetaMethod::GeneralizedBass => generalized_bass_zeta(sys),
            }
            .map(|poly| (poly.degree(), poly_to_strings(&poly)))
        });
        match result {
            Ok((degree, coefficients)) => {
                let doc = serde_json::json!({
                    "method": name,
                    "degree": degree,
                    "coefficients": coefficients,
                });
                emit_string(out_json, doc.to_string())
            }
            Err(e) => fail(&e),
        }
    })
}

/// Verifies the determinant-quotient identity; returns the JSON report
/// {"pass", "lhs_coeffs", "rhs_coeffs", "first_mismatch"}. A report with
/// pass = false yields LZ_VERIFY_FAILED (the JSON is still written).
#[no_mangle]
pub unsafe extern "C" fn lz_verify_main_json(
    ls: *const LzLocalSystem,
    out_json: *mut *mut c_char,
) -> LzStatus {
    guard(|| {
        let Some(handle) = ls.as_ref() else {
            set_last_error("null local system");
            return LzStatus::NullPointer;
        };
        if out_json.is_null() {
            set_last_error("null out pointer");
            return LzStatus::NullPointer;
        }
        let result = with_local_system!(&handle.inner, sys => {
            verify_main_theorem(sys).map(|r| {
                (
                    r.pass,
                    serde_json::json!({
                        "pass": r.pass,
                        "lhs_coeffs": poly_to_strings(&r.lhs),
                        "rhs_coeffs": poly_to_strings(&r.rhs),
                        "first_mismatch": r.first_mismatch,
                    }),
                )
            })
        });
        match result {
            Ok((pass, doc)) => {
                let status = emit_string(out_json, doc.to_string());
                if status != LzStatus::Ok {
                    return status;
                }
                if pass {
                    LzStatus::Ok
                } else {
                    set_last_error("identity failed");
                    LzStatus::VerifyFailed
                }
            }
            Err(e) => fail(&e),
        }
    })
}

/// Closed-form normalized determinant of Laplacian + lambda_u as an exact
/// "p/q" string. `u` is a rational string like "1/10".
#[no_mangle]
pub unsafe extern "C" fn lz_l2det_closed(
    q: u64,
    n: u64,
    r: u64,
    u: *const c_char,
    out_value: *mut *mut c_char,
) -> LzStatus {
    guard(|| {
        if out_value.is_null() {
            set_last_error("null out pointer");
            return LzStatus::NullPointer;
        }
        let text = match read_utf8(u) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let parsed = match parse_rational(text) {
            Ok(v) => v,
            Err(e) => return fail(&e),
        };
        match l2det_closed(q as usize, n as usize, r as usize, &parsed) {
            Ok(value) => emit_string(out_value, format_rational(&value)),
            Err(e) => fail(&e),
        }
    })
}

/// Same as [`lz_l2det_closed`] but as a double.
#[no_mangle]
pub unsafe extern "C" fn lz_l2det_closed_f64(
    q: u64,
    n: u64,
    r: u64,
    u: *const c_char,
    out_value: *mut f64,
) -> LzStatus {
    guard(|| {
        if out_value.is_null() {
            set_last_error("null out pointer");
            return LzStatus::NullPointer;
        }
        let text = match read_utf8(u) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let parsed = match parse_rational(text) {
            Ok(v) => v,
            Err(e) => return fail(&e),
        };
        match l2det_closed(q as usize, n as usize, r as usize, &parsed) {
            Ok(value) => {
                *out_value = rational_to_f64(&value);
                LzStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Frees a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn lz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
