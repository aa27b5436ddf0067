//! C ABI over the equidist library.
//!
//! Codes cross the boundary as opaque `EqCode` handles created by the
//! constructors here and released with [`eq_code_free`]. Strings returned to
//! the caller are NUL-terminated, allocated by Rust, and must be released
//! with [`eq_string_free`]. Every fallible call reports an [`EqStatus`];
//! output parameters are written only on `EQ_STATUS_OK` (plus the incumbent
//! outputs on `EQ_STATUS_BUDGET_EXHAUSTED`, see [`eq_max_equidistant`]).

use std::ffi::{CStr, CString};
use std::ptr;

use libc::c_char;

use equidist::bounds::best_bound;
use equidist::codes::{Code, Equidistance};
use equidist::constructions::{simplex_linear_code, sunflower_code};
use equidist::search::{max_equidistant, DEFAULT_BUDGET};
use equidist::Error;

/// Result of a C-ABI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqStatus {
    Ok = 0,
    /// A parameter was rejected (bad alphabet, distance, shape, ...).
    InvalidArgument = 1,
    /// The input string was not a valid JSON code.
    ParseError = 2,
    /// The requested object exceeds a library size cap.
    CapExceeded = 3,
    /// The search ran out of nodes before proving optimality.
    BudgetExhausted = 4,
    /// A required pointer argument was NULL.
    NullPointer = 5,
}

/// Opaque handle to a code.
pub struct EqCode {
    inner: Code,
}

fn status_of(err: &Error) -> EqStatus {
    match err {
        Error::CapExceeded { .. } => EqStatus::CapExceeded,
        _ => EqStatus::InvalidArgument,
    }
}

fn hand_out(code: Code, out: *mut *mut EqCode) -> EqStatus {
    unsafe { *out = Box::into_raw(Box::new(EqCode { inner: code })) };
    EqStatus::Ok
}

/// Parse a JSON code (`{"q":..,"n":..,"words":[[..],..]}`) into a handle.
///
/// # Safety
/// `text` must point to a NUL-terminated string and `out` to writable
/// pointer-sized storage; on `EQ_STATUS_OK` the caller owns the handle.
#[no_mangle]
pub unsafe extern "C" fn eq_code_from_json(text: *const c_char, out: *mut *mut EqCode) -> EqStatus {
    if text.is_null() || out.is_null() {
        return EqStatus::NullPointer;
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        return EqStatus::ParseError;
    };
    match Code::from_json(text) {
        Ok(code) => hand_out(code, out),
        Err(_) => EqStatus::ParseError,
    }
}

/// Serialize a handle back to the JSON code format. Returns NULL when
/// `code` is NULL. The result must be released with [`eq_string_free`].
///
/// # Safety
/// `code` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn eq_code_to_json(code: *const EqCode) -> *mut c_char {
    let Some(code) = code.as_ref() else {
        return ptr::null_mut();
    };
    CString::new(code.inner.to_json()).map_or(ptr::null_mut(), CString::into_raw)
}

/// Release a handle. NULL is ignored.
///
/// # Safety
/// `code` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eq_code_free(code: *mut EqCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Release a string produced by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build the simplex code over GF(q) in dimension k.
///
/// # Safety
/// `out` must point to writable pointer-sized storage.
#[no_mangle]
pub unsafe extern "C" fn eq_simplex_code(q: u32, k: u32, out: *mut *mut EqCode) -> EqStatus {
    if out.is_null() {
        return EqStatus::NullPointer;
    }
    match simplex_linear_code(q, k) {
        Ok(code) => hand_out(code, out),
        Err(e) => status_of(&e),
    }
}

/// Build the length-n sunflower code of distance d over alphabet size q.
///
/// # Safety
/// `out` must point to writable pointer-sized storage.
#[no_mangle]
pub unsafe extern "C" fn eq_sunflower_code(
    n: usize,
    d: usize,
    q: u32,
    out: *mut *mut EqCode,
) -> EqStatus {
    if out.is_null() {
        return EqStatus::NullPointer;
    }
    match sunflower_code(n, d, q) {
        Ok(code) => hand_out(code, out),
        Err(e) => status_of(&e),
    }
}

/// Alphabet size of the code, or 0 when `code` is NULL.
///
/// # Safety
/// `code` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eq_code_q(code: *const EqCode) -> u32 {
    code.as_ref().map_or(0, |c| c.inner.q())
}

/// Word length of the code, or 0 when `code` is NULL.
///
/// # Safety
/// `code` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eq_code_length(code: *const EqCode) -> usize {
    code.as_ref().map_or(0, |c| c.inner.n())
}

/// Number of words in the code, or 0 when `code` is NULL.
///
/// # Safety
/// `code` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eq_code_size(code: *const EqCode) -> usize {
    code.as_ref().map_or(0, |c| c.inner.size())
}

/// True when all pairwise distances agree (vacuously for fewer than two
/// words). `distance_out`, if non-NULL, receives the common distance, or -1
/// when there is none to report.
///
/// # Safety
/// `code` must be NULL or a live handle; `distance_out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn eq_is_equidistant(code: *const EqCode, distance_out: *mut i64) -> bool {
    let Some(code) = code.as_ref() else {
        return false;
    };
    let eq = code.inner.is_equidistant();
    if !distance_out.is_null() {
        *distance_out = eq.distance().map_or(-1, |d| d as i64);
    }
    !matches!(eq, Equidistance::Not)
}

/// Minimum over the applicable size bounds at (n, q, d).
///
/// # Safety
/// `out` must point to writable storage for a 64-bit value.
#[no_mangle]
pub unsafe extern "C" fn eq_best_bound(n: u64, q: u32, d: u64, out: *mut u64) -> EqStatus {
    if out.is_null() {
        return EqStatus::NullPointer;
    }
    match best_bound(n, q, d) {
        Ok(best) => {
            *out = best.minimum;
            EqStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Exhaustive maximum equidistant code size at (n, q, d). A `budget` of 0
/// selects the default node budget. On `EQ_STATUS_OK` the optimum is proven;
/// on `EQ_STATUS_BUDGET_EXHAUSTED` the outputs hold the best incumbent.
///
/// # Safety
/// `optimum_out` and `proven_out` must be NULL or point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn eq_max_equidistant(
    n: usize,
    q: u32,
    d: usize,
    budget: u64,
    optimum_out: *mut usize,
    proven_out: *mut bool,
) -> EqStatus {
    let budget = if budget == 0 { DEFAULT_BUDGET } else { budget };
    match max_equidistant(n, q, d, budget) {
        Ok(r) => {
            if !optimum_out.is_null() {
                *optimum_out = r.optimum;
            }
            if !proven_out.is_null() {
                *proven_out = r.proven_optimal;
            }
            if r.proven_optimal {
                EqStatus::Ok
            } else {
                EqStatus::BudgetExhausted
            }
        }
        Err(e) => status_of(&e),
    }
}
