//! C ABI bindings for the spectral-measure library.
//!
//! Conventions:
//! - Opaque handles are heap-allocated behind raw pointers with explicit
//!   `_free` functions.
//! - Every fallible call returns an [`AdeStatus`] code; the most recent
//!   error message is retrieved with [`ade_last_error_message`] (a fresh
//!   allocation, released with [`ade_string_free`]).
//! - Returned strings are NUL-terminated UTF-8 owned by the caller and
//!   released with [`ade_string_free`].
//!
//! # Safety (blanket)
//!
//! All `unsafe extern "C"` functions share the same contract: pointer
//! arguments must be valid for the duration of the call, out-pointers must
//! be writable, and handles must originate from this library and must not
//! be used after being freed.
#![allow(clippy::missing_safety_doc)]

use ade_spectra::cyclotomic::{build_system, decompose_graph, DecompositionProblem};
use ade_spectra::graphs::{build_graph, loop_count, BipartiteGraph, GraphName};
use ade_spectra::report::{build_report, decomposition_json, emit_json, measure_json};
use ade_spectra::series::{factored_display, graph_t_series};
use ade_spectra::verify::check_graph;
use libc::c_char;
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::ptr;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AdeStatus {
    Ok = 0,
    /// Unknown graph name, bad parameter, or out-of-domain request.
    InvalidArgument = 1,
    /// A verification check failed (mathematics, not plumbing).
    VerificationFailed = 2,
    /// Null pointer where a value was required.
    NullPointer = 3,
    /// Result does not fit the requested fixed-width type.
    Overflow = 4,
    /// Internal invariant violation; report a bug.
    Internal = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<Vec<u8>>) {
    let message = CString::new(message).unwrap_or_else(|_| {
        CString::new("error message contained NUL").expect("literal is NUL-free")
    });
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn status_of(e: &ade_spectra::Error) -> AdeStatus {
    match e {
        ade_spectra::Error::Internal(_) => AdeStatus::Internal,
        _ => AdeStatus::InvalidArgument,
    }
}

/// Opaque graph handle.
pub struct AdeGraph {
    graph: BipartiteGraph,
}

unsafe fn parse_name(name: *const c_char) -> Result<GraphName, AdeStatus> {
    if name.is_null() {
        set_error("graph name pointer is null");
        return Err(AdeStatus::NullPointer);
    }
    let raw = unsafe { CStr::from_ptr(name) };
    let text = raw.to_str().map_err(|_| {
        set_error("graph name is not valid UTF-8");
        AdeStatus::InvalidArgument
    })?;
    text.parse::<GraphName>().map_err(|e| {
        set_error(e.to_string());
        AdeStatus::InvalidArgument
    })
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> AdeStatus {
    if out.is_null() {
        set_error("output pointer is null");
        return AdeStatus::NullPointer;
    }
    match CString::new(text) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            AdeStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL byte");
            AdeStatus::Internal
        }
    }
}

/// Build a finite catalog graph from its name (`A(4)`, `E8ext`,
/// `F(2,1,4)`, ...). On success the handle must be released with
/// [`ade_graph_free`].
#[no_mangle]
pub unsafe extern "C" fn ade_graph_new(name: *const c_char, out: *mut *mut AdeGraph) -> AdeStatus {
    if out.is_null() {
        set_error("output pointer is null");
        return AdeStatus::NullPointer;
    }
    let parsed = match unsafe { parse_name(name) } {
        Ok(n) => n,
        Err(status) => return status,
    };
    match build_graph(&parsed) {
        Ok(graph) => {
            let handle = Box::new(AdeGraph { graph });
            unsafe { *out = Box::into_raw(handle) };
            AdeStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

/// Release a graph handle. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn ade_graph_free(graph: *mut AdeGraph) {
    if !graph.is_null() {
        drop(unsafe { Box::from_raw(graph) });
    }
}

/// Number of vertices, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn ade_graph_vertex_count(graph: *const AdeGraph) -> u32 {
    if graph.is_null() {
        return 0;
    }
    unsafe { (*graph).graph.vertex_count() as u32 }
}

/// Number of closed walks of length `2k` based at the distinguished
/// vertex. Fails with `Overflow` when the exact count exceeds `u64`.
#[no_mangle]
pub unsafe extern "C" fn ade_graph_loop_count(
    graph: *const AdeGraph,
    k: u32,
    out: *mut u64,
) -> AdeStatus {
    if graph.is_null() || out.is_null() {
        set_error("null pointer argument");
        return AdeStatus::NullPointer;
    }
    let g = unsafe { &(*graph).graph };
    match loop_count(g, 2 * k as usize) {
        Ok(count) => match u64::try_from(&count) {
            Ok(v) => {
                unsafe { *out = v };
                AdeStatus::Ok
            }
            Err(_) => {
                set_error(format!("loop count {count} does not fit in u64"));
                AdeStatus::Overflow
            }
        },
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

/// Factored `T`-series display, e.g. `(1-q^6)(1-q^8)/((1-q^3)(1-q^12))`.
#[no_mangle]
pub unsafe extern "C" fn ade_graph_t_series(
    graph: *const AdeGraph,
    out: *mut *mut c_char,
) -> AdeStatus {
    if graph.is_null() {
        set_error("null graph handle");
        return AdeStatus::NullPointer;
    }
    let t = graph_t_series(unsafe { &(*graph).graph });
    unsafe { write_string(out, factored_display(&t)) }
}

/// Catalog spectral measure as JSON: atom keys to exact fractions, or
/// `{"cyclotomic":false}` for the exceptional graphs.
#[no_mangle]
pub unsafe extern "C" fn ade_measure_json(name: *const c_char, out: *mut *mut c_char) -> AdeStatus {
    let parsed = match unsafe { parse_name(name) } {
        Ok(n) => n,
        Err(status) => return status,
    };
    match measure_json(&parsed) {
        Ok(v) => unsafe { write_string(out, v.to_string()) },
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

/// Run the cyclotomic decomposition and return the outcome as JSON
/// (feasible coefficients, or an infeasibility certificate with its
/// residual check vector).
#[no_mangle]
pub unsafe extern "C" fn ade_decompose_json(
    name: *const c_char,
    out: *mut *mut c_char,
) -> AdeStatus {
    let parsed = match unsafe { parse_name(name) } {
        Ok(n) => n,
        Err(status) => return status,
    };
    let result = match decompose_graph(&parsed) {
        Ok(r) => r,
        Err(e) => {
            set_error(e.to_string());
            return status_of(&e);
        }
    };
    let graph = match build_graph(&parsed) {
        Ok(g) => g,
        Err(e) => {
            set_error(e.to_string());
            return status_of(&e);
        }
    };
    let sys = match build_system(&DecompositionProblem {
        target_t: graph_t_series(&graph),
        period: result.period,
    }) {
        Ok(s) => s,
        Err(e) => {
            set_error(e.to_string());
            return status_of(&e);
        }
    };
    let labels: Vec<String> = sys.labels.iter().map(|l| l.to_string()).collect();
    let json = decomposition_json(&result, Some((&labels, &sys.rows, &sys.rhs)));
    unsafe { write_string(out, json.to_string()) }
}

/// Run the per-graph verification checks (loop counts up to `2*max_k`).
/// Returns `Ok` when every check passes and `VerificationFailed`
/// otherwise, with the failing check named in the error message.
#[no_mangle]
pub unsafe extern "C" fn ade_verify_graph(name: *const c_char, max_k: u32) -> AdeStatus {
    let parsed = match unsafe { parse_name(name) } {
        Ok(n) => n,
        Err(status) => return status,
    };
    if !parsed.is_symbolic() {
        if let Err(e) = build_graph(&parsed) {
            set_error(e.to_string());
            return status_of(&e);
        }
    }
    for outcome in check_graph(&parsed, max_k as usize, None) {
        if !outcome.passed {
            set_error(format!("{}: {}", outcome.name, outcome.detail));
            return AdeStatus::VerificationFailed;
        }
    }
    AdeStatus::Ok
}

/// Full catalog report as JSON (the same bytes the CLI emits).
#[no_mangle]
pub unsafe extern "C" fn ade_report_json(max_k: u32, out: *mut *mut c_char) -> AdeStatus {
    let names = ade_spectra::graphs::standard_catalog();
    match build_report(&names, max_k as usize) {
        Ok(report) => unsafe { write_string(out, emit_json(&report)) },
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

/// Most recent error message on this thread, or null if none. The caller
/// frees the returned string with [`ade_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ade_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(message) => message.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Release a string returned by this library. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn ade_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Library version as a static string (not freed by the caller).
#[no_mangle]
pub extern "C" fn ade_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
