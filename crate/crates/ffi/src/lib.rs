//! C ABI over `sos-cone`.
//!
//! Objects cross the boundary as opaque pointers created by `sos_*` functions
//! and released by the matching `*_free`. Every fallible call returns a
//! [`SosStatus`]; on failure `sos_last_error_message` describes what went
//! wrong on the calling thread. Strings handed out by the library are owned
//! by the caller and must be released with [`sos_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sos_cone::conditions::{self, ConditionReport, WeightScheme};
use sos_cone::gram::{self, GramOracle, OracleStatus, OracleVerdict};
use sos_cone::poly::{self, Polynomial};
use sos_cone::rational::{format_rational, parse_rational};
use sos_cone::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SosStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    /// The operation ran but found nothing (e.g. no shift up to the bound).
    NotFound = 5,
    /// The Gram oracle refused the problem (basis too large).
    Oracle = 6,
    Panic = 7,
}

/// Oracle verdict; values match the CLI exit codes of `certify`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SosOracleStatus {
    CertifiedSos = 0,
    LikelyNotSos = 2,
    Inconclusive = 3,
}

impl From<OracleStatus> for SosOracleStatus {
    fn from(s: OracleStatus) -> Self {
        match s {
            OracleStatus::CertifiedSos => SosOracleStatus::CertifiedSos,
            OracleStatus::LikelyNotSos => SosOracleStatus::LikelyNotSos,
            OracleStatus::Inconclusive => SosOracleStatus::Inconclusive,
        }
    }
}

/// A polynomial with exact rational coefficients.
pub struct SosPolynomial(Polynomial);

/// Outcome of one sufficient condition.
pub struct SosReport(ConditionReport);

/// Outcome of the Gram-matrix oracle.
pub struct SosVerdict(OracleVerdict);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> SosStatus {
    match e {
        Error::Syntax { .. }
        | Error::DegreeOverflow { .. }
        | Error::VariableIndex { .. }
        | Error::ArityMismatch { .. }
        | Error::InvalidPolynomial(_)
        | Error::Rational(_)
        | Error::Json(_) => SosStatus::Parse,
        Error::BasisTooLarge { .. } => SosStatus::Oracle,
        _ => SosStatus::InvalidArgument,
    }
}

struct Fail(SosStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `body`, recording any error or panic for `sos_last_error_message`.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> SosStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SosStatus::Ok,
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            SosStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(SosStatus::NullPointer, format!("{what} is null")))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut()
        .ok_or_else(|| Fail(SosStatus::NullPointer, format!("{what} is null")))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(SosStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(SosStatus::InvalidUtf8, format!("{what}: {e}")))
}

fn into_c_string(s: String) -> *mut c_char {
    // Library output never contains NUL.
    CString::new(s).expect("no interior NUL").into_raw()
}

/// Parses text such as `"1 + x1^4 - 3/2*x1*x2"` in `nvars` variables.
/// `half_degree == 0` picks `ceil(deg/2)` (at least 1).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sos_polynomial_parse(
    text: *const c_char,
    nvars: usize,
    half_degree: u32,
    out: *mut *mut SosPolynomial,
) -> SosStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let text = read_str(text, "text")?;
        let d = (half_degree > 0).then_some(half_degree);
        let f = poly::parse(text, nvars, d)?;
        *out = Box::into_raw(Box::new(SosPolynomial(f)));
        Ok(())
    })
}

/// Reads one polynomial object `{"n":..,"d":..,"terms":[..]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sos_polynomial_from_json(
    json: *const c_char,
    out: *mut *mut SosPolynomial,
) -> SosStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let text = read_str(json, "json")?;
        let mut polys = poly::json::polys_from_json(text)?;
        if polys.len() != 1 {
            return Err(Fail(
                SosStatus::InvalidArgument,
                format!("expected one polynomial, found {}", polys.len()),
            ));
        }
        *out = Box::into_raw(Box::new(SosPolynomial(polys.remove(0))));
        Ok(())
    })
}

/// # Safety
/// `p` must come from this library and not be used afterwards. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn sos_polynomial_free(p: *mut SosPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Canonical text form; free with [`sos_string_free`].
///
/// # Safety
/// `p` must be a live polynomial and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sos_polynomial_to_text(
    p: *const SosPolynomial,
    out: *mut *mut c_char,
) -> SosStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        *out = into_c_string(borrow(p, "polynomial")?.0.to_text());
        Ok(())
    })
}

/// # Safety
/// `p` must be a live polynomial and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sos_polynomial_to_json(
    p: *const SosPolynomial,
    out: *mut *mut c_char,
) -> SosStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        *out = into_c_string(poly::json::poly_to_json(&borrow(p, "polynomial")?.0));
        Ok(())
    })
}

unsafe fn emit_report(out: *mut *mut SosReport, r: ConditionReport) -> Result<(), Fail> {
    *out_ptr(out, "out")? = Box::into_raw(Box::new(SosReport(r)));
    Ok(())
}

/// # Safety
/// `p` must be a live polynomial and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sos_check_theorem1(
    p: *const SosPolynomial,
    out: *mut *mut SosReport,
) -> SosStatus {
    guard(|| {
        let f = borrow(p, "polynomial")?;
        emit_report(out, conditions::check_theorem1(&f.0))
    })
}

/// `weights` is a comma-separated list such as `"1/4,3/4"`, one entry per
/// band; null means the uniform split.
///
/// # Safety
/// `p` must be a live polynomial, `weights` null or NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sos_check_corollary1(
    p: *const SosPolynomial,
    weights: *const c_char,
    out: *mut *mut SosReport,
) -> SosStatus {
    guard(|| {
        let f = borrow(p, "polynomial")?;
        let w = if weights.is_null() {
            WeightScheme::uniform(f.0.half_degree())
        } else {
            WeightScheme::parse(read_str(weights, "weights")?)?
        };
        emit_report(out, conditions::check_corollary1(&f.0, &w)?)
    })
}

/// # Safety
/// `p` must be a live polynomial and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sos_check_corollary2(
    p: *const SosPolynomial,
    out: *mut *mut SosReport,
) -> SosStatus {
    guard(|| {
        let f = borrow(p, "polynomial")?;
        emit_report(out, conditions::check_corollary2(&f.0))
    })
}

/// # Safety
/// `r` must be a live report and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sos_report_accepted(r: *const SosReport, out: *mut bool) -> SosStatus {
    guard(|| {
        *out_ptr(out, "out")? = borrow(r, "report")?.0.accepted;
        Ok(())
    })
}

/// # Safety
/// `r` must be a live report and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sos_report_to_json(
    r: *const SosReport,
    out: *mut *mut c_char,
) -> SosStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        *out = into_c_string(borrow(r, "report")?.0.to_json());
        Ok(())
    })
}

/// # Safety
/// `r` must come from this library and not be used afterwards. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn sos_report_free(r: *mut SosReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Runs the Gram-matrix oracle. `tol <= 0` or `max_iter == 0` select the
/// library defaults.
///
/// # Safety
/// `p` must be a live polynomial and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sos_certify(
    p: *const SosPolynomial,
    tol: f64,
    max_iter: usize,
    out: *mut *mut SosVerdict,
) -> SosStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let f = borrow(p, "polynomial")?;
        let tol = if tol > 0.0 { tol } else { gram::DEFAULT_TOL };
        let max_iter = if max_iter > 0 {
            max_iter
        } else {
            gram::DEFAULT_MAX_ITER
        };
        let v = gram::certify(&f.0, max_iter, tol)?;
        *out = Box::into_raw(Box::new(SosVerdict(v)));
        Ok(())
    })
}

/// # Safety
/// `v` must be a live verdict and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sos_verdict_status(
    v: *const SosVerdict,
    out: *mut SosOracleStatus,
) -> SosStatus {
    guard(|| {
        *out_ptr(out, "out")? = borrow(v, "verdict")?.0.status.into();
        Ok(())
    })
}

/// Largest residual of the coefficient-matching equations.
///
/// # Safety
/// `v` must be a live verdict and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sos_verdict_residual(v: *const SosVerdict, out: *mut f64) -> SosStatus {
    guard(|| {
        *out_ptr(out, "out")? = borrow(v, "verdict")?.0.residual;
        Ok(())
    })
}

/// # Safety
/// `v` must be a live verdict and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sos_verdict_to_json(
    v: *const SosVerdict,
    out: *mut *mut c_char,
) -> SosStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        *out = into_c_string(borrow(v, "verdict")?.0.to_json());
        Ok(())
    })
}

/// # Safety
/// `v` must come from this library and not be used afterwards. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn sos_verdict_free(v: *mut SosVerdict) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Smallest constant `M` (to within 1/1024) in `[0, m_max]` with `f + M`
/// certified by the oracle, written as `"p"` or `"p/q"`. Returns
/// [`SosStatus::NotFound`] and a null string when the bound is too small.
///
/// # Safety
/// `p` must be a live polynomial, `m_max` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn sos_find_shift(
    p: *const SosPolynomial,
    m_max: *const c_char,
    out: *mut *mut c_char,
) -> SosStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let f = borrow(p, "polynomial")?;
        let m_max = parse_rational(read_str(m_max, "m_max")?)?;
        let found = conditions::find_shift(&f.0, &GramOracle::default(), &m_max)?;
        match found.shift {
            Some(m) => {
                *out = into_c_string(format_rational(&m));
                Ok(())
            }
            None => Err(Fail(
                SosStatus::NotFound,
                format!("no certified shift up to {}", format_rational(&m_max)),
            )),
        }
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn sos_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null after a success.
/// The pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn sos_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
