//! C ABI over `ghostlength`.
//!
//! Every function returns a [`GlStatus`]; results go through out-pointers.
//! On failure `gl_last_error_message` describes the error for the calling
//! thread. Complexes and chain maps are opaque handles created from JSON and
//! released with their `_free` function. Strings returned by the library are
//! released with `gl_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ghostlength::bounds;
use ghostlength::purity::parse_sequence;
use ghostlength::resolution::{certify_length, is_ghost_projective};
use ghostlength::zcomplex::io::{parse_chain_map, parse_complex, HomotopyDoc};
use ghostlength::zcomplex::{ChainMap, GradedComplex};
use ghostlength::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Capacity = 3,
    Parse = 4,
    DimensionMismatch = 5,
    NotAComplex = 6,
    NotAChainMap = 7,
    Precondition = 8,
    Falsified = 9,
    Io = 10,
    Utf8 = 11,
    Panic = 12,
}

impl From<&Error> for GlStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Capacity { .. } => GlStatus::Capacity,
            Error::InvalidArgument(_) => GlStatus::InvalidArgument,
            Error::DimensionMismatch(_) => GlStatus::DimensionMismatch,
            Error::NotAComplex { .. } => GlStatus::NotAComplex,
            Error::NotAChainMap { .. } => GlStatus::NotAChainMap,
            Error::Precondition(_) => GlStatus::Precondition,
            Error::Falsified(_) => GlStatus::Falsified,
            Error::Parse(_) => GlStatus::Parse,
            Error::Io(_) => GlStatus::Io,
        }
    }
}

/// Opaque handle to a chain complex.
pub struct GlComplex(GradedComplex);

/// Opaque handle to a chain map.
pub struct GlChainMap(ChainMap);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GlBoundsReport {
    pub n: i64,
    pub steenrod: u64,
    pub weighted: u64,
    pub monotone: u64,
    pub horizon: i64,
    /// Meaningful only when `has_upper` is true.
    pub upper: u64,
    pub has_upper: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Runs `f`, mapping errors and panics to a status and recording the message.
fn guard(f: impl FnOnce() -> Result<(), (GlStatus, String)>) -> GlStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GlStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GlStatus::Panic
        }
    }
}

fn lib<T>(r: ghostlength::Result<T>) -> Result<T, (GlStatus, String)> {
    r.map_err(|e| (GlStatus::from(&e), e.to_string()))
}

fn null(what: &str) -> (GlStatus, String) {
    (GlStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (GlStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| (GlStatus::Utf8, format!("{what} is not UTF-8: {e}")))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), (GlStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("interior nul removed")
        .into_raw()
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn gl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn gl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn gl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gl_stl(n: i64, out: *mut u64) -> GlStatus {
    guard(|| write(out, lib(bounds::stl(n))?, "out"))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gl_weighted_bound(n: i64, out: *mut u64) -> GlStatus {
    guard(|| write(out, lib(bounds::weighted_bound(n))?, "out"))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gl_monotone_bound(n: i64, horizon: i64, out: *mut u64) -> GlStatus {
    guard(|| write(out, lib(bounds::monotone_bound(n, horizon))?, "out"))
}

/// Fails with `InvalidArgument` for `n < 0`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gl_upper_bound(n: i64, out: *mut u64) -> GlStatus {
    guard(|| {
        let u = bounds::upper_bound(n)
            .ok_or((GlStatus::InvalidArgument, format!("no upper bound for n = {n}")))?;
        write(out, u, "out")
    })
}

/// A negative `horizon` selects the default `2n + 64`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gl_bounds_report(n: i64, horizon: i64, out: *mut GlBoundsReport) -> GlStatus {
    guard(|| {
        let r = lib(bounds::bounds_report(n, (horizon >= 0).then_some(horizon)))?;
        let report = GlBoundsReport {
            n: r.n,
            steenrod: r.steenrod,
            weighted: r.weighted,
            monotone: r.monotone,
            horizon: r.horizon,
            upper: r.upper.unwrap_or(0),
            has_upper: r.upper.is_some(),
        };
        write(out, report, "out")
    })
}

/// Parses a complex document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gl_complex_from_json(json: *const c_char, out: *mut *mut GlComplex) -> GlStatus {
    guard(|| {
        let x = lib(parse_complex(read_str(json, "json")?))?;
        write(out, Box::into_raw(Box::new(GlComplex(x))), "out")
    })
}

/// # Safety
/// `c` must be null or a handle from `gl_complex_from_json`, freed once.
#[no_mangle]
pub unsafe extern "C" fn gl_complex_free(c: *mut GlComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

unsafe fn complex<'a>(c: *const GlComplex) -> Result<&'a GradedComplex, (GlStatus, String)> {
    c.as_ref().map(|c| &c.0).ok_or_else(|| null("complex"))
}

unsafe fn chain_map<'a>(m: *const GlChainMap) -> Result<&'a ChainMap, (GlStatus, String)> {
    m.as_ref().map(|m| &m.0).ok_or_else(|| null("chain map"))
}

/// Homology as a JSON array of `{"degree", "group", "rank", "torsion"}`.
///
/// # Safety
/// `c` must be a live handle; `out` must be valid for writes. Free the
/// string with `gl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn gl_complex_homology_json(c: *const GlComplex, out: *mut *mut c_char) -> GlStatus {
    guard(|| {
        let x = complex(c)?;
        let groups: Vec<serde_json::Value> = x
            .degrees()
            .map(|n| {
                let g = x.homology(n).group().clone();
                serde_json::json!({
                    "degree": n,
                    "group": g.to_string(),
                    "rank": g.rank,
                    "torsion": g.torsion.iter().map(ToString::to_string).collect::<Vec<_>>(),
                })
            })
            .collect();
        write(out, c_string(serde_json::Value::Array(groups).to_string()), "out")
    })
}

/// # Safety
/// `c` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gl_complex_is_ghost_projective(c: *const GlComplex, out: *mut bool) -> GlStatus {
    guard(|| write(out, is_ghost_projective(complex(c)?), "out"))
}

/// Writes whether a length-`k` certificate exists. A violated precondition
/// is reported as `false` with the reason in the last error message and
/// status `Precondition`.
///
/// # Safety
/// `c` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gl_certify_length(c: *const GlComplex, k: usize, out: *mut bool) -> GlStatus {
    guard(|| {
        let x = complex(c)?;
        match certify_length(x, k) {
            Ok(_) => write(out, true, "out"),
            Err(e) => {
                write(out, false, "out")?;
                Err((GlStatus::from(&e), e.to_string()))
            }
        }
    })
}

/// Parses a chain-map document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gl_chain_map_from_json(json: *const c_char, out: *mut *mut GlChainMap) -> GlStatus {
    guard(|| {
        let f = lib(parse_chain_map(read_str(json, "json")?))?;
        write(out, Box::into_raw(Box::new(GlChainMap(f))), "out")
    })
}

/// # Safety
/// `m` must be null or a handle from `gl_chain_map_from_json`, freed once.
#[no_mangle]
pub unsafe extern "C" fn gl_chain_map_free(m: *mut GlChainMap) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gl_chain_map_is_ghost(m: *const GlChainMap, out: *mut bool) -> GlStatus {
    guard(|| write(out, chain_map(m)?.is_ghost(), "out"))
}

/// Searches for a null-homotopy. `found` reports the outcome; when found and
/// `homotopy_json` is non-null it receives `{"components": {degree: matrix}}`.
///
/// # Safety
/// `m` must be a live handle; `found` must be valid for writes;
/// `homotopy_json` may be null.
#[no_mangle]
pub unsafe extern "C" fn gl_chain_map_null_homotopy(
    m: *const GlChainMap,
    found: *mut bool,
    homotopy_json: *mut *mut c_char,
) -> GlStatus {
    guard(|| {
        let f = chain_map(m)?;
        let h = f.null_homotopy();
        write(found, h.is_some(), "found")?;
        if !homotopy_json.is_null() {
            let text = match h {
                Some(h) => c_string(
                    serde_json::to_string(&HomotopyDoc::from_homotopy(&h)).expect("serializes"),
                ),
                None => ptr::null_mut(),
            };
            homotopy_json.write(text);
        }
        Ok(())
    })
}

/// Parses a short exact sequence document and runs both purity tests.
///
/// # Safety
/// `json` must be a nul-terminated string; both out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gl_is_pure_exact_json(json: *const c_char, pure: *mut bool, split: *mut bool) -> GlStatus {
    guard(|| {
        let seq = lib(parse_sequence(read_str(json, "json")?))?;
        if pure.is_null() || split.is_null() {
            return Err(null("out"));
        }
        write(pure, lib(seq.is_pure_exact())?, "pure")?;
        write(split, seq.is_split(), "split")
    })
}
