//! C ABI over the humbert library.
//!
//! Every fallible call returns a [`HumbertStatus`]; on failure the message
//! is kept per thread and read with [`humbert_last_error`]. Strings handed
//! out by this library are released with [`humbert_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use humbert::catalog::{verify_formula, Catalog};
use humbert::operator::verify_operator_identity;
use humbert::profiles::Config;
use humbert::quadrature::{cross_check, default_tolerance};
use humbert::scalar::{parse_rational, Rational};
use humbert::series::{eval_function, FunctionRef};
use humbert::{Biseries, Error, Kind, ParameterMap, Scalar, Symbol};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HumbertStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Pole = 4,
    Domain = 5,
    NoConvergence = 6,
    Signature = 7,
    UnboundSymbol = 8,
    UnknownTarget = 9,
    ConstraintViolation = 10,
    Io = 11,
    OutOfRange = 12,
    Panic = 13,
}

impl From<&Error> for HumbertStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Pole(_) => HumbertStatus::Pole,
            Error::Signature { .. } => HumbertStatus::Signature,
            Error::UnboundSymbol(_) => HumbertStatus::UnboundSymbol,
            Error::Domain { .. } => HumbertStatus::Domain,
            Error::NoConvergence { .. } | Error::NonConvergence { .. } => HumbertStatus::NoConvergence,
            Error::UnknownIdentity(_) | Error::UnknownFormula(_) | Error::UnknownIntegral(_) | Error::UnknownProfile(_) => {
                HumbertStatus::UnknownTarget
            }
            Error::ConstraintViolation(_) => HumbertStatus::ConstraintViolation,
            Error::UnsupportedTransform(_) | Error::Parse(_) => HumbertStatus::Parse,
            Error::Io(_) => HumbertStatus::Io,
        }
    }
}

/// Opaque parameter bindings.
pub struct HumbertParams(ParameterMap);

/// Opaque exact coefficient triangle.
pub struct HumbertSeries(Biseries<Rational>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

struct Failure(HumbertStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(HumbertStatus::from(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HumbertStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HumbertStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside humbert".into());
            HumbertStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(HumbertStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(HumbertStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn null(what: &str) -> Failure {
    Failure(HumbertStatus::NullPointer, format!("{what} is null"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| Failure(HumbertStatus::Parse, "interior NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn params_or_empty(p: *const HumbertParams, empty: &ParameterMap) -> &ParameterMap {
    if p.is_null() {
        empty
    } else {
        // SAFETY: non-null handles come from humbert_params_new.
        unsafe { &(*p).0 }
    }
}

/// Message of the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn humbert_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn humbert_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Empty bindings. Release with [`humbert_params_free`].
#[no_mangle]
pub extern "C" fn humbert_params_new() -> *mut HumbertParams {
    Box::into_raw(Box::new(HumbertParams(ParameterMap::new())))
}

/// Copies the bindings of a named profile into a new handle.
///
/// # Safety
/// `name` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn humbert_params_from_profile(name: *const c_char, out: *mut *mut HumbertParams) -> HumbertStatus {
    guard(|| {
        let name = text(name, "name")?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let values = Config::embedded().profile(name)?.values().clone();
        *out = Box::into_raw(Box::new(HumbertParams(values)));
        Ok(())
    })
}

/// # Safety
/// `p` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn humbert_params_free(p: *mut HumbertParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Binds `symbol` (e.g. `"gamma1"`) to `value` (`"p/q"`, integer or decimal).
///
/// # Safety
/// `p` is a live handle; the strings are NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn humbert_params_set(p: *mut HumbertParams, symbol: *const c_char, value: *const c_char) -> HumbertStatus {
    guard(|| {
        let p = p.as_mut().ok_or_else(|| null("params"))?;
        let sym: Symbol = text(symbol, "symbol")?.parse()?;
        p.0.set(sym, parse_rational(text(value, "value")?)?);
        Ok(())
    })
}

/// Float value of a bound parameter.
///
/// # Safety
/// `p` is a live handle; `symbol` is NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn humbert_params_get(p: *const HumbertParams, symbol: *const c_char, out: *mut f64) -> HumbertStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("params"))?;
        let sym: Symbol = text(symbol, "symbol")?.parse()?;
        let v = p.0.require(sym)?;
        *out.as_mut().ok_or_else(|| null("output pointer"))? = Scalar::to_f64(v);
        Ok(())
    })
}

/// Evaluates `kind` at `(x, y)` by its series with relative tolerance `tol`.
///
/// # Safety
/// `kind` is NUL-terminated; `p` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn humbert_eval(
    kind: *const c_char,
    p: *const HumbertParams,
    x: f64,
    y: f64,
    tol: f64,
    out: *mut f64,
) -> HumbertStatus {
    guard(|| {
        let kind: Kind = text(kind, "kind")?.parse()?;
        let p = p.as_ref().ok_or_else(|| null("params"))?;
        let f = FunctionRef::from_superset(kind, &p.0)?;
        let v = eval_function(&f, x, y, tol)?;
        *out.as_mut().ok_or_else(|| null("output pointer"))? = v;
        Ok(())
    })
}

/// Exact series of `kind` through total degree `degree`.
///
/// # Safety
/// `kind` is NUL-terminated; `p` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn humbert_series_new(
    kind: *const c_char,
    p: *const HumbertParams,
    degree: usize,
    out: *mut *mut HumbertSeries,
) -> HumbertStatus {
    guard(|| {
        let kind: Kind = text(kind, "kind")?.parse()?;
        let p = p.as_ref().ok_or_else(|| null("params"))?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let s = FunctionRef::from_superset(kind, &p.0)?.truncated_series::<Rational>(degree)?;
        *out = Box::into_raw(Box::new(HumbertSeries(s)));
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn humbert_series_free(s: *mut HumbertSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Total degree of the triangle, or 0 for a null handle.
///
/// # Safety
/// `s` is a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn humbert_series_degree(s: *const HumbertSeries) -> usize {
    s.as_ref().map_or(0, |s| s.0.degree())
}

unsafe fn slot<'a>(s: *const HumbertSeries, m: usize, n: usize) -> Result<&'a Rational, Failure> {
    let s = s.as_ref().ok_or_else(|| null("series"))?;
    if m + n > s.0.degree() {
        return Err(Failure(HumbertStatus::OutOfRange, format!("slot ({m}, {n}) exceeds degree {}", s.0.degree())));
    }
    Ok(s.0.coeff(m, n))
}

/// Coefficient of `x^m y^n` as a double.
///
/// # Safety
/// `s` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn humbert_series_coeff(s: *const HumbertSeries, m: usize, n: usize, out: *mut f64) -> HumbertStatus {
    guard(|| {
        let c = slot(s, m, n)?;
        *out.as_mut().ok_or_else(|| null("output pointer"))? = Scalar::to_f64(c);
        Ok(())
    })
}

/// Coefficient of `x^m y^n` as an exact `"p/q"` string.
///
/// # Safety
/// `s` is a live handle; `out` is writable. Free the string with
/// [`humbert_string_free`].
#[no_mangle]
pub unsafe extern "C" fn humbert_series_coeff_exact(s: *const HumbertSeries, m: usize, n: usize, out: *mut *mut c_char) -> HumbertStatus {
    guard(|| {
        let c = slot(s, m, n)?;
        write_string(out, c.to_string())
    })
}

/// The whole triangle as JSON `{"degree": N, "coeffs": [[m, n, "p/q"], ...]}`.
///
/// # Safety
/// `s` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn humbert_series_to_json(s: *const HumbertSeries, out: *mut *mut c_char) -> HumbertStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("series"))?;
        write_string(out, s.0.to_json())
    })
}

/// Exact check of a decomposition formula; writes the report as JSON.
/// A null `p` uses the `generic-A` profile. The status is `Ok` whenever a
/// report was produced, pass or fail.
///
/// # Safety
/// `id` is NUL-terminated; `p` is a live handle or null; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn humbert_verify_formula(
    id: *const c_char,
    p: *const HumbertParams,
    degree: usize,
    out: *mut *mut c_char,
) -> HumbertStatus {
    guard(|| {
        let id = text(id, "id")?;
        let catalog = Catalog::load_default()?;
        let default = Config::embedded().profile("generic-A")?.params_for(id);
        let r = verify_formula(&catalog, id, params_or_empty(p, &default), degree)?;
        write_string(out, r.to_json_line())
    })
}

/// Exact check of an operator identity; see [`humbert_verify_formula`].
///
/// # Safety
/// As for [`humbert_verify_formula`].
#[no_mangle]
pub unsafe extern "C" fn humbert_verify_identity(
    id: *const c_char,
    p: *const HumbertParams,
    degree: usize,
    out: *mut *mut c_char,
) -> HumbertStatus {
    guard(|| {
        let id = text(id, "id")?;
        let default = Config::embedded().profile("generic-A")?.params_for(id);
        let r = verify_operator_identity(id, params_or_empty(p, &default), degree)?;
        write_string(out, r.to_json_line())
    })
}

/// Cross-checks one integral representation at `(x, y)` against its
/// series. A null `p` uses the `integral-A` profile; `tol <= 0` picks the
/// default tolerance for the representation.
///
/// # Safety
/// `id` is NUL-terminated; `p` is a live handle or null; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn humbert_integral_check(
    id: *const c_char,
    p: *const HumbertParams,
    x: f64,
    y: f64,
    tol: f64,
    out: *mut *mut c_char,
) -> HumbertStatus {
    guard(|| {
        let id = text(id, "id")?;
        let default = Config::embedded().profile("integral-A")?.params_for(id);
        let tol = if tol > 0.0 { tol } else { default_tolerance(id) };
        let r = cross_check(id, params_or_empty(p, &default), &[(x, y)], tol)?;
        write_string(out, r.to_json_line())
    })
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn humbert_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
