//! C ABI over the `globalctl` analysis toolkit.
//!
//! Every function returns a [`GcStatus`]; results go through out-pointers. Graphs are opaque
//! [`GcGraph`] handles released with [`gc_graph_free`]. Strings handed out by the library
//! are released with [`gc_string_free`]. The message of the last failure on the calling
//! thread is available from [`gc_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use globalctl::cli::{analyze, AnalyzeOptions};
use globalctl::commutant::symmetry_report;
use globalctl::graph::{automorphism_group, Graph};
use globalctl::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GcStatus {
    Ok = 0,
    NullPointer = 1,
    Utf8 = 2,
    Parse = 3,
    InvalidGraph = 4,
    Budget = 5,
    Verification = 6,
    Internal = 7,
}

/// Opaque graph handle.
pub struct GcGraph {
    graph: Graph,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GcSymmetryReport {
    pub aut_order: u64,
    pub aut_span_dim: usize,
    pub commutant_dim: usize,
    pub has_hidden: bool,
}

pub const GC_ANALYZE_LIE: u32 = 1;
pub const GC_ANALYZE_BLOCKS: u32 = 1 << 1;
pub const GC_ANALYZE_QAOA: u32 = 1 << 2;
pub const GC_ANALYZE_ALLOW_DISCONNECTED: u32 = 1 << 3;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> GcStatus {
    match e {
        Error::Graph6(_) | Error::Parse { .. } | Error::Config(_) | Error::Io(_) => GcStatus::Parse,
        Error::InvalidGraph(_)
        | Error::InvalidPermutation(_)
        | Error::QubitMismatch { .. }
        | Error::InvalidOperator(_) => GcStatus::InvalidGraph,
        Error::Budget(_) => GcStatus::Budget,
        Error::Verification(_) => GcStatus::Verification,
        Error::Numerical(_) | Error::Checkpoint { .. } | Error::WorkerPanic(_) => {
            GcStatus::Internal
        }
    }
}

fn guard(f: impl FnOnce() -> Result<(), GcStatus>) -> GcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            GcStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            GcStatus::Internal
        }
    }
}

fn fail(e: Error) -> GcStatus {
    set_error(&e.to_string());
    status_of(&e)
}

fn null() -> GcStatus {
    set_error("null pointer argument");
    GcStatus::NullPointer
}

unsafe fn graph_ref<'a>(g: *const GcGraph) -> Result<&'a Graph, GcStatus> {
    g.as_ref().map(|h| &h.graph).ok_or_else(null)
}

fn into_c_string(s: String) -> Result<*mut c_char, GcStatus> {
    CString::new(s).map(CString::into_raw).map_err(|_| {
        set_error("interior nul byte");
        GcStatus::Internal
    })
}

/// Message of the last failure on this thread; empty after a success. Owned by the library.
#[no_mangle]
pub extern "C" fn gc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn gc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parse a graph6 string.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_graph_from_graph6(
    text: *const c_char,
    out: *mut *mut GcGraph,
) -> GcStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(text).to_str().map_err(|_| {
            set_error("graph6 text is not UTF-8");
            GcStatus::Utf8
        })?;
        let graph = Graph::from_graph6(s).map_err(fail)?;
        *out = Box::into_raw(Box::new(GcGraph { graph }));
        Ok(())
    })
}

/// Build a graph from `m` edges given as `2 m` vertex indices.
///
/// # Safety
/// `edges` must point to `2 * m` readable values (may be null when `m == 0`); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_graph_from_edges(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut GcGraph,
) -> GcStatus {
    guard(|| {
        if out.is_null() || (edges.is_null() && m > 0) {
            return Err(null());
        }
        let flat = if m == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(edges, 2 * m)
        };
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        let graph = Graph::from_edges(n, &pairs).map_err(fail)?;
        *out = Box::into_raw(Box::new(GcGraph { graph }));
        Ok(())
    })
}

/// Release a graph handle. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gc_graph_free(g: *mut GcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_graph_vertex_count(g: *const GcGraph, out: *mut usize) -> GcStatus {
    guard(|| {
        let graph = graph_ref(g)?;
        if out.is_null() {
            return Err(null());
        }
        *out = graph.n();
        Ok(())
    })
}

/// graph6 encoding of the graph; free with [`gc_string_free`].
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_graph_to_graph6(g: *const GcGraph, out: *mut *mut c_char) -> GcStatus {
    guard(|| {
        let graph = graph_ref(g)?;
        if out.is_null() {
            return Err(null());
        }
        *out = into_c_string(graph.to_graph6())?;
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_automorphism_order(g: *const GcGraph, out: *mut u64) -> GcStatus {
    guard(|| {
        let graph = graph_ref(g)?;
        if out.is_null() {
            return Err(null());
        }
        *out = automorphism_group(graph).order();
        Ok(())
    })
}

/// Symmetry report for the full generator set.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_symmetry_report(
    g: *const GcGraph,
    out: *mut GcSymmetryReport,
) -> GcStatus {
    guard(|| {
        let graph = graph_ref(g)?;
        if out.is_null() {
            return Err(null());
        }
        let r = symmetry_report(graph, None).map_err(fail)?;
        *out = GcSymmetryReport {
            aut_order: r.aut_order,
            aut_span_dim: r.aut_span_dim,
            commutant_dim: r.commutant_dim,
            has_hidden: r.has_hidden,
        };
        Ok(())
    })
}

/// Full analysis report as JSON; `flags` is a combination of `GC_ANALYZE_*`.
/// Free the string with [`gc_string_free`].
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_analyze_json(
    g: *const GcGraph,
    flags: u32,
    seed: u64,
    out: *mut *mut c_char,
) -> GcStatus {
    guard(|| {
        let graph = graph_ref(g)?;
        if out.is_null() {
            return Err(null());
        }
        let opts = AnalyzeOptions {
            lie: flags & GC_ANALYZE_LIE != 0,
            blocks: flags & GC_ANALYZE_BLOCKS != 0,
            qaoa: flags & GC_ANALYZE_QAOA != 0,
            allow_disconnected: flags & GC_ANALYZE_ALLOW_DISCONNECTED != 0,
            seed,
            ..AnalyzeOptions::default()
        };
        let report = analyze(graph, None, &opts).map_err(fail)?;
        let text = serde_json::to_string(&report).map_err(|e| {
            set_error(&e.to_string());
            GcStatus::Internal
        })?;
        *out = into_c_string(text)?;
        Ok(())
    })
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
