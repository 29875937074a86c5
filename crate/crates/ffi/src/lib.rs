//! C ABI over the verifier core. Handles are opaque; every fallible call
//! returns an `StStatus` and writes results through out-pointers. Strings
//! are NUL-terminated UTF-8. Panics are caught at the boundary and reported
//! as `ST_STATUS_INTERNAL`.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use spectral_turan::engine::{self, Tolerances};
use spectral_turan::{clique, graph6, source, spectral, Error, Graph};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StStatus {
    StStatusOk = 0,
    /// Input string could not be parsed as a graph source.
    StStatusParse = 1,
    /// The eigensolver failed to converge.
    StStatusNumeric = 2,
    /// An argument was out of range for the operation.
    StStatusInvalidArg = 3,
    /// The caller-supplied buffer is too small.
    StStatusBufferTooSmall = 4,
    /// A required pointer was NULL.
    StStatusNullPointer = 5,
    /// An unexpected internal failure (caught panic).
    StStatusInternal = 6,
}

/// Opaque graph handle; create with `st_graph_from_g6` or
/// `st_graph_from_source`, release with `st_graph_free`.
pub struct StGraph {
    inner: Graph,
}

/// Result of evaluating the two-eigenvalue clique bound on a graph.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct StVerdict {
    /// mu1^2, plus mu2^2 when the indicator applies
    pub lhs: f64,
    /// 2 (omega - 1) / omega * m
    pub bound: f64,
    /// bound - lhs
    pub slack: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub omega: u32,
    /// 1 when mu2 >= 0 and its square was included in lhs
    pub indicator_applied: u8,
    pub tight: u8,
    pub violated: u8,
}

fn classify(e: &Error) -> StStatus {
    match e {
        Error::ConvergenceFailure => StStatus::StStatusNumeric,
        Error::MalformedHeader
        | Error::InvalidByte(_)
        | Error::LengthMismatch { .. }
        | Error::NonzeroPadding
        | Error::ParseError { .. }
        | Error::BadSource(_) => StStatus::StStatusParse,
        _ => StStatus::StStatusInvalidArg,
    }
}

fn guarded(body: impl FnOnce() -> StStatus) -> StStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(StStatus::StStatusInternal)
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    CStr::from_ptr(ptr).to_str().ok()
}

fn install(g: Graph, out: *mut *mut StGraph) -> StStatus {
    let handle = Box::new(StGraph { inner: g });
    unsafe { *out = Box::into_raw(handle) };
    StStatus::StStatusOk
}

/// Parses a single graph6 record (optionally with the standard header).
///
/// # Safety
/// `g6` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_graph_from_g6(g6: *const c_char, out: *mut *mut StGraph) -> StStatus {
    guarded(|| {
        if out.is_null() {
            return StStatus::StStatusNullPointer;
        }
        let Some(text) = read_str(g6) else {
            return StStatus::StStatusNullPointer;
        };
        match graph6::parse_graph6(text.trim()) {
            Ok(g) => install(g, out),
            Err(e) => classify(&e),
        }
    })
}

/// Resolves a generator expression ("turan:12,3", "petersen", "cycle:5", ...)
/// or a graph6 literal to a single graph.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_graph_from_source(
    text: *const c_char,
    out: *mut *mut StGraph,
) -> StStatus {
    guarded(|| {
        if out.is_null() {
            return StStatus::StStatusNullPointer;
        }
        let Some(text) = read_str(text) else {
            return StStatus::StStatusNullPointer;
        };
        match source::resolve_single(text) {
            Ok(g) => install(g, out),
            Err(e) => classify(&e),
        }
    })
}

/// Releases a graph handle. NULL is a no-op.
///
/// # Safety
/// `g` must have come from a constructor of this library and not already
/// have been freed.
#[no_mangle]
pub unsafe extern "C" fn st_graph_free(g: *mut StGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices; 0 for NULL.
///
/// # Safety
/// `g` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn st_graph_vertex_count(g: *const StGraph) -> u64 {
    g.as_ref().map_or(0, |g| g.inner.n() as u64)
}

/// Number of edges; 0 for NULL.
///
/// # Safety
/// `g` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn st_graph_edge_count(g: *const StGraph) -> u64 {
    g.as_ref().map_or(0, |g| g.inner.m() as u64)
}

/// Writes the canonical graph6 record (NUL-terminated) into `buf`.
/// `written` receives the record length excluding the NUL; on
/// `ST_STATUS_BUFFER_TOO_SMALL` it receives the required capacity.
///
/// # Safety
/// `g` must be a live handle; `buf` must point to `cap` writable bytes;
/// `written` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_graph_to_g6(
    g: *const StGraph,
    buf: *mut c_char,
    cap: usize,
    written: *mut usize,
) -> StStatus {
    guarded(|| {
        let (Some(g), false) = (g.as_ref(), written.is_null()) else {
            return StStatus::StStatusNullPointer;
        };
        let record = graph6::to_graph6(&g.inner);
        if cap < record.len() + 1 {
            *written = record.len() + 1;
            return StStatus::StStatusBufferTooSmall;
        }
        if buf.is_null() {
            return StStatus::StStatusNullPointer;
        }
        std::ptr::copy_nonoverlapping(record.as_ptr(), buf as *mut u8, record.len());
        *buf.add(record.len()) = 0;
        *written = record.len();
        StStatus::StStatusOk
    })
}

/// Exact clique number.
///
/// # Safety
/// `g` must be a live handle and `omega` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_clique_number(g: *const StGraph, omega: *mut u32) -> StStatus {
    guarded(|| {
        let (Some(g), false) = (g.as_ref(), omega.is_null()) else {
            return StStatus::StStatusNullPointer;
        };
        *omega = clique::max_clique(&g.inner).omega as u32;
        StStatus::StStatusOk
    })
}

/// Adjacency eigenvalues in descending order. `eigenvalues` must hold
/// `st_graph_vertex_count(g)` doubles; `residual` (optional, may be NULL)
/// receives the max infinity-norm eigenpair residual.
///
/// # Safety
/// `g` must be a live handle; `eigenvalues` must point to `cap` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn st_spectrum(
    g: *const StGraph,
    eigenvalues: *mut f64,
    cap: usize,
    residual: *mut f64,
) -> StStatus {
    guarded(|| {
        let Some(g) = g.as_ref() else {
            return StStatus::StStatusNullPointer;
        };
        let n = g.inner.n();
        if cap < n {
            return StStatus::StStatusBufferTooSmall;
        }
        if eigenvalues.is_null() && n > 0 {
            return StStatus::StStatusNullPointer;
        }
        match spectral::eigendecompose(&g.inner) {
            Ok(spec) => {
                std::ptr::copy_nonoverlapping(spec.eigenvalues.as_ptr(), eigenvalues, n);
                if !residual.is_null() {
                    *residual = spec.residual;
                }
                StStatus::StStatusOk
            }
            Err(e) => classify(&e),
        }
    })
}

/// Evaluates mu1^2 + mu2^2 [mu2 >= 0] against 2 (omega - 1) / omega * m
/// with the default tightness/violation tolerances (1e-6 relative).
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_bn_verdict(g: *const StGraph, out: *mut StVerdict) -> StStatus {
    guarded(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else {
            return StStatus::StStatusNullPointer;
        };
        if g.inner.n() == 0 {
            return StStatus::StStatusInvalidArg;
        }
        let spec = match spectral::eigendecompose(&g.inner) {
            Ok(spec) => spec,
            Err(e) => return classify(&e),
        };
        let omega = clique::max_clique(&g.inner).omega;
        let v = engine::bn_check(&g.inner, &spec, omega, &Tolerances::default());
        *out = StVerdict {
            lhs: v.lhs,
            bound: v.bound,
            slack: v.slack,
            mu1: v.mu1,
            mu2: v.mu2,
            omega: omega as u32,
            indicator_applied: v.indicator_applied as u8,
            tight: v.tight as u8,
            violated: v.violated as u8,
        };
        StStatus::StStatusOk
    })
}

/// Static description of a status code; never NULL.
#[no_mangle]
pub extern "C" fn st_status_message(status: StStatus) -> *const c_char {
    let text: &'static [u8] = match status {
        StStatus::StStatusOk => b"ok\0",
        StStatus::StStatusParse => b"could not parse graph input\0",
        StStatus::StStatusNumeric => b"eigensolver failed to converge\0",
        StStatus::StStatusInvalidArg => b"argument out of range\0",
        StStatus::StStatusBufferTooSmall => b"buffer too small\0",
        StStatus::StStatusNullPointer => b"required pointer was NULL\0",
        StStatus::StStatusInternal => b"internal failure\0",
    };
    text.as_ptr() as *const c_char
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;
    use std::ptr;

    fn open(src: &str) -> *mut StGraph {
        let c = CString::new(src).unwrap();
        let mut handle = ptr::null_mut();
        let status = unsafe { st_graph_from_source(c.as_ptr(), &mut handle) };
        assert_eq!(status, StStatus::StStatusOk);
        handle
    }

    #[test]
    fn graph_lifecycle_and_counts() {
        let g = open("petersen");
        unsafe {
            assert_eq!(st_graph_vertex_count(g), 10);
            assert_eq!(st_graph_edge_count(g), 15);
            st_graph_free(g);
            st_graph_free(ptr::null_mut());
        }
    }

    #[test]
    fn g6_round_trip_through_the_abi() {
        let c = CString::new("Bw").unwrap();
        let mut handle = ptr::null_mut();
        unsafe {
            assert_eq!(st_graph_from_g6(c.as_ptr(), &mut handle), StStatus::StStatusOk);
            let mut buf = [0i8; 16];
            let mut written = 0usize;
            let status = st_graph_to_g6(handle, buf.as_mut_ptr() as *mut c_char, 16, &mut written);
            assert_eq!(status, StStatus::StStatusOk);
            assert_eq!(written, 2);
            let text = CStr::from_ptr(buf.as_ptr() as *const c_char).to_str().unwrap();
            assert_eq!(text, "Bw");
            // a too-small buffer reports the needed capacity
            let status = st_graph_to_g6(handle, buf.as_mut_ptr() as *mut c_char, 2, &mut written);
            assert_eq!(status, StStatus::StStatusBufferTooSmall);
            assert_eq!(written, 3);
            st_graph_free(handle);
        }
    }

    #[test]
    fn verdict_on_tight_graph() {
        let g = open("turan:12,3");
        let mut v = StVerdict {
            lhs: 0.0,
            bound: 0.0,
            slack: 0.0,
            mu1: 0.0,
            mu2: 0.0,
            omega: 0,
            indicator_applied: 0,
            tight: 0,
            violated: 0,
        };
        unsafe {
            assert_eq!(st_bn_verdict(g, &mut v), StStatus::StStatusOk);
            st_graph_free(g);
        }
        assert_eq!(v.omega, 3);
        assert_eq!(v.tight, 1);
        assert_eq!(v.violated, 0);
        assert!((v.bound - 2.0 / 3.0 * 2.0 * 48.0).abs() < 1e-9);
        assert!(v.slack.abs() < 1e-8);
    }

    #[test]
    fn spectrum_of_complete_graph() {
        let g = open("complete:4");
        let mut eigen = [0f64; 4];
        let mut residual = 0f64;
        unsafe {
            assert_eq!(
                st_spectrum(g, eigen.as_mut_ptr(), 4, &mut residual),
                StStatus::StStatusOk
            );
            assert_eq!(st_spectrum(g, eigen.as_mut_ptr(), 3, &mut residual), StStatus::StStatusBufferTooSmall);
            st_graph_free(g);
        }
        assert!((eigen[0] - 3.0).abs() < 1e-10);
        assert!((eigen[3] + 1.0).abs() < 1e-10);
        assert!(residual < 1e-10);
    }

    #[test]
    fn clique_number_matches_core() {
        let g = open("cycle:7");
        let mut omega = 0u32;
        unsafe {
            assert_eq!(st_clique_number(g, &mut omega), StStatus::StStatusOk);
            st_graph_free(g);
        }
        assert_eq!(omega, 2);
    }

    #[test]
    fn status_paths() {
        let bad = CString::new("definitely not a graph ...").unwrap();
        let mut handle = ptr::null_mut();
        unsafe {
            assert_eq!(
                st_graph_from_source(bad.as_ptr(), &mut handle),
                StStatus::StStatusParse
            );
            assert_eq!(
                st_graph_from_g6(ptr::null(), &mut handle),
                StStatus::StStatusNullPointer
            );
            assert_eq!(st_graph_vertex_count(ptr::null()), 0);
            let mut omega = 0u32;
            assert_eq!(
                st_clique_number(ptr::null(), &mut omega),
                StStatus::StStatusNullPointer
            );
            let msg = CStr::from_ptr(st_status_message(StStatus::StStatusParse));
            assert_eq!(msg.to_str().unwrap(), "could not parse graph input");
        }
    }

    #[test]
    fn header_is_generated() {
        let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/spectral_turan.h");
        let text = std::fs::read_to_string(header).unwrap();
        for symbol in [
            "st_graph_from_g6",
            "st_graph_from_source",
            "st_graph_free",
            "st_graph_to_g6",
            "st_clique_number",
            "st_spectrum",
            "st_bn_verdict",
            "st_status_message",
            "StVerdict",
            "StStatus",
        ] {
            assert!(text.contains(symbol), "header missing {symbol}");
        }
    }
}
