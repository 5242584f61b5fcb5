//! C ABI for ascentlab.
//!
//! Every function returns an [`AlStatus`]. On failure a message is kept per
//! thread and can be read with [`al_last_error`]. Series are opaque
//! [`AlSeries`] handles released with [`al_series_free`]; strings handed out
//! by the library are released with [`al_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ascentlab::analysis::format_fixed;
use ascentlab::da::{self, DaError, EnsembleOptions};
use ascentlab::dp::{self, Algorithm, DpError, EnumOptions};
use ascentlab::series::{ApproxTerm, BFile, CoefficientSeries};
use ascentlab::verify::check_series;
use rug::Integer;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    CapExceeded = 3,
    Enumeration = 4,
    Parse = 5,
    Extend = 6,
    Mismatch = 7,
    Panic = 8,
}

/// An exact coefficient series.
pub struct AlSeries {
    inner: CoefficientSeries,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(AlStatus, String);

impl From<DpError> for Failure {
    fn from(e: DpError) -> Self {
        let status = match e {
            DpError::CapExceeded { .. } => AlStatus::CapExceeded,
            DpError::UnknownAlgorithm(_) => AlStatus::InvalidArgument,
            _ => AlStatus::Enumeration,
        };
        Failure(status, e.to_string())
    }
}

impl From<DaError> for Failure {
    fn from(e: DaError) -> Self {
        Failure(AlStatus::Extend, e.to_string())
    }
}

fn set_error(msg: Option<String>) {
    let msg = msg.map(|m| CString::new(m.replace('\0', " ")).expect("no interior nul"));
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> AlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(None);
            AlStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(Some(msg));
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(Some(format!("panic: {msg}")));
            AlStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(AlStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(AlStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn series_arg<'a>(p: *const AlSeries) -> Result<&'a CoefficientSeries, Failure> {
    p.as_ref().map(|s| &s.inner).ok_or_else(|| null("series"))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(AlStatus::InvalidArgument, "string contains nul".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn put_series(out: *mut *mut AlSeries, s: CoefficientSeries) {
    *out = Box::into_raw(Box::new(AlSeries { inner: s }));
}

/// Message for the last failing call on this thread, or null after a
/// success. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn al_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn al_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Enumerate `n_terms` counts (lengths 1..=n_terms). `algorithm` is one of
/// `ascent`, `000-exponential`, `000-polynomial`, `100`, `110`, `120`.
///
/// # Safety
/// `algorithm` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn al_enumerate(
    algorithm: *const c_char,
    n_terms: usize,
    override_caps: bool,
    out: *mut *mut AlSeries,
) -> AlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let algorithm: Algorithm = str_arg(algorithm, "algorithm")?.parse()?;
        if n_terms == 0 {
            return Err(Failure(AlStatus::InvalidArgument, "n_terms must be at least 1".into()));
        }
        let opts = if override_caps { EnumOptions::overriding() } else { EnumOptions::default() };
        put_series(out, dp::enumerate(algorithm, n_terms, &opts)?);
        Ok(())
    })
}

/// Parse b-file text holding exact terms only.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn al_series_from_bfile(text: *const c_char, out: *mut *mut AlSeries) -> AlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let b: BFile = str_arg(text, "text")?.parse().map_err(|e| Failure(AlStatus::Parse, format!("{e}")))?;
        if let Some(t) = b.approx.first() {
            return Err(Failure(AlStatus::Parse, format!("approximate term at index {}", t.index)));
        }
        put_series(out, b.exact);
        Ok(())
    })
}

/// # Safety
/// `series` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn al_series_free(series: *mut AlSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// # Safety
/// `s` must come from this library.
#[no_mangle]
pub unsafe extern "C" fn al_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of terms and the index of the first one.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn al_series_shape(series: *const AlSeries, len: *mut usize, first_index: *mut usize) -> AlStatus {
    guard(|| {
        let s = series_arg(series)?;
        if len.is_null() || first_index.is_null() {
            return Err(null("out"));
        }
        *len = s.len();
        *first_index = s.first_index;
        Ok(())
    })
}

/// Decimal string of the term at index `n`.
///
/// # Safety
/// Pointers must be valid; free the string with [`al_string_free`].
#[no_mangle]
pub unsafe extern "C" fn al_series_term(series: *const AlSeries, n: usize, out: *mut *mut c_char) -> AlStatus {
    guard(|| {
        let s = series_arg(series)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let v = s
            .get(n)
            .ok_or_else(|| Failure(AlStatus::InvalidArgument, format!("index {n} outside {:?}", s.indices())))?;
        put_string(out, v.to_string())
    })
}

/// The series as b-file text.
///
/// # Safety
/// Pointers must be valid; free the string with [`al_string_free`].
#[no_mangle]
pub unsafe extern "C" fn al_series_to_bfile(series: *const AlSeries, out: *mut *mut c_char) -> AlStatus {
    guard(|| {
        let s = series_arg(series)?;
        if out.is_null() {
            return Err(null("out"));
        }
        put_string(out, s.to_bfile())
    })
}

/// Check a series starting at index 1 against the enumerator for
/// `algorithm`. Returns `Mismatch` with the first bad index in the error
/// message when they disagree.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn al_verify(series: *const AlSeries, algorithm: *const c_char, override_caps: bool) -> AlStatus {
    guard(|| {
        let s = series_arg(series)?;
        let algorithm: Algorithm = str_arg(algorithm, "algorithm")?.parse()?;
        let opts = if override_caps { EnumOptions::overriding() } else { EnumOptions::default() };
        let c = check_series(s, algorithm, &opts)?;
        match c.failures.first() {
            None => Ok(()),
            Some(f) => Err(Failure(AlStatus::Mismatch, f.clone())),
        }
    })
}

/// Predict `count` further terms with an ensemble of differential
/// approximants of the given order, at `digits` decimal digits. The output
/// is b-file text: the exact input followed by `index ~value agreed_digits`
/// lines. A series starting at index 1 gets `c_0 = 1` for the fit.
///
/// # Safety
/// Pointers must be valid; free the string with [`al_string_free`].
#[no_mangle]
pub unsafe extern "C" fn al_extend(
    series: *const AlSeries,
    count: usize,
    order: usize,
    digits: u32,
    out: *mut *mut c_char,
) -> AlStatus {
    guard(|| {
        let s = series_arg(series)?;
        if out.is_null() {
            return Err(null("out"));
        }
        if count == 0 || order == 0 || digits < 30 {
            return Err(Failure(AlStatus::InvalidArgument, "need count >= 1, order >= 1, digits >= 30".into()));
        }
        let c = match s.first_index {
            0 => s.clone(),
            1 => s.with_constant_term(Integer::from(1)),
            k => return Err(Failure(AlStatus::InvalidArgument, format!("series starts at index {k}"))),
        };
        let cfgs = da::default_ensemble(c.len(), order, &[-1, 0, 2, 5]);
        if cfgs.is_empty() {
            return Err(Failure(AlStatus::InvalidArgument, format!("too few terms for order {order}")));
        }
        let opts = EnsembleOptions { digits, min_success: cfgs.len().min(3), ..EnsembleOptions::default() };
        let r = da::predict_ensemble(&c, &cfgs, count, &opts)?;
        let mut b = BFile::exact_only(s.clone());
        b.approx = r
            .terms
            .iter()
            .map(|t| ApproxTerm { index: t.index, value: format_fixed(&t.mean, digits), agreed_digits: t.agreed_digits })
            .collect();
        put_string(out, b.render())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take(p: *mut c_char) -> String {
        let s = CStr::from_ptr(p).to_str().unwrap().to_string();
        al_string_free(p);
        s
    }

    #[test]
    fn enumerate_and_read_back() {
        unsafe {
            let mut s = ptr::null_mut();
            assert_eq!(al_enumerate(cstr("000-polynomial").as_ptr(), 7, false, &mut s), AlStatus::Ok);
            assert!(al_last_error().is_null());
            let (mut len, mut first) = (0, 0);
            assert_eq!(al_series_shape(s, &mut len, &mut first), AlStatus::Ok);
            assert_eq!((len, first), (7, 1));
            let mut t = ptr::null_mut();
            assert_eq!(al_series_term(s, 7, &mut t), AlStatus::Ok);
            assert_eq!(take(t), "277");
            assert_eq!(al_series_term(s, 8, &mut t), AlStatus::InvalidArgument);
            let mut text = ptr::null_mut();
            assert_eq!(al_series_to_bfile(s, &mut text), AlStatus::Ok);
            assert_eq!(take(text), "1 1\n2 2\n3 4\n4 10\n5 27\n6 83\n7 277\n");
            assert_eq!(al_verify(s, cstr("000-exponential").as_ptr(), false), AlStatus::Ok);
            al_series_free(s);
        }
    }

    #[test]
    fn errors_set_codes_and_messages() {
        unsafe {
            let mut s = ptr::null_mut();
            assert_eq!(al_enumerate(cstr("999").as_ptr(), 5, false, &mut s), AlStatus::InvalidArgument);
            let msg = CStr::from_ptr(al_last_error()).to_str().unwrap();
            assert!(msg.contains("999"), "{msg}");
            assert_eq!(al_enumerate(cstr("110").as_ptr(), 40, false, &mut s), AlStatus::CapExceeded);
            assert_eq!(al_enumerate(ptr::null(), 5, false, &mut s), AlStatus::NullPointer);
            assert_eq!(al_enumerate(cstr("110").as_ptr(), 5, false, ptr::null_mut()), AlStatus::NullPointer);
            assert!(s.is_null());
            assert_eq!(al_series_from_bfile(cstr("1 1\n2 x\n").as_ptr(), &mut s), AlStatus::Parse);
            assert_eq!(al_series_from_bfile(cstr("1 1\n2 ~2.0 5\n").as_ptr(), &mut s), AlStatus::Parse);
            assert_eq!(al_series_shape(ptr::null(), ptr::null_mut(), ptr::null_mut()), AlStatus::NullPointer);
            al_series_free(ptr::null_mut());
            al_string_free(ptr::null_mut());
        }
    }

    #[test]
    fn verify_reports_first_mismatch() {
        unsafe {
            let mut s = ptr::null_mut();
            assert_eq!(al_enumerate(cstr("120").as_ptr(), 8, false, &mut s), AlStatus::Ok);
            let mut text = ptr::null_mut();
            assert_eq!(al_series_to_bfile(s, &mut text), AlStatus::Ok);
            let text = take(text);
            al_series_free(s);
            assert_eq!(al_series_from_bfile(cstr(&text).as_ptr(), &mut s), AlStatus::Ok);
            assert_eq!(al_verify(s, cstr("120").as_ptr(), false), AlStatus::Ok);
            al_series_free(s);
            let bad = text.replace("\n4 ", "\n4 1");
            assert_eq!(al_series_from_bfile(cstr(&bad).as_ptr(), &mut s), AlStatus::Ok);
            assert_eq!(al_verify(s, cstr("120").as_ptr(), false), AlStatus::Mismatch);
            let msg = CStr::from_ptr(al_last_error()).to_str().unwrap();
            assert!(msg.starts_with("first mismatch at n=4"), "{msg}");
            al_series_free(s);
        }
    }

    #[test]
    fn extend_geometric() {
        unsafe {
            let text: String = (0..12).map(|m| format!("{m} {}\n", 1u64 << m)).collect();
            let mut s = ptr::null_mut();
            assert_eq!(al_series_from_bfile(cstr(&text).as_ptr(), &mut s), AlStatus::Ok);
            let mut out = ptr::null_mut();
            assert_eq!(al_extend(s, 4, 1, 40, &mut out), AlStatus::Ok);
            let b: BFile = take(out).parse().unwrap();
            let vals: Vec<&str> = b.approx.iter().map(|t| t.value.as_str()).collect();
            assert_eq!(vals, ["4096", "8192", "16384", "32768"]);
            assert_eq!(al_extend(s, 4, 1, 10, &mut out), AlStatus::InvalidArgument);
            al_series_free(s);
        }
    }

    #[test]
    fn version_is_static() {
        let v = unsafe { CStr::from_ptr(al_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
