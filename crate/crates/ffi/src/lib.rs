//! C ABI over the `apacket` engine.
//!
//! Parameters are opaque handles created by `ap_param_from_json` or
//! `ap_param_builtin` and released with `ap_param_free`. Every function
//! returns a status code; on failure `ap_last_error_message` describes the
//! error until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use apacket::io::{builtin, parse_param_json};
use apacket::packets::{enumerate_with, EnumerateOptions};
use apacket::{AdmissibleOrder, Engine, Error, Parameter, Sign, SignedData};

pub const AP_OK: i32 = 0;
pub const AP_ERR_NULL: i32 = 1;
pub const AP_ERR_PARSE: i32 = 2;
pub const AP_ERR_INVALID: i32 = 3;
pub const AP_ERR_RECURSION: i32 = 4;
pub const AP_ERR_INTERNAL: i32 = 5;
pub const AP_ERR_PANIC: i32 = 6;

/// A parameter together with its admissible order.
pub struct ApParam {
    psi: Parameter,
    order: AdmissibleOrder,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => AP_ERR_PARSE,
        Error::InvalidData(_) => AP_ERR_INVALID,
        Error::RecursionLimit { .. } => AP_ERR_RECURSION,
        Error::Hypothesis(_) | Error::MeasureViolation(_) => AP_ERR_INTERNAL,
    }
}

enum Fail {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> i32 {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AP_OK,
        Ok(Err(Fail::Null(what))) => {
            set_error(&format!("null pointer: {what}"));
            AP_ERR_NULL
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            AP_ERR_PANIC
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Lib(Error::Parse(format!("{what} is not UTF-8"))))
}

fn into_handle(loaded: apacket::io::Loaded) -> Result<*mut ApParam, Fail> {
    let order = loaded.order_or_default()?;
    Ok(Box::into_raw(Box::new(ApParam {
        psi: loaded.psi,
        order,
    })))
}

/// Parse a JSON parameter file. On success `*out` owns a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ap_param_from_json(json: *const c_char, out: *mut *mut ApParam) -> i32 {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        *out = ptr::null_mut();
        let s = text(json, "json")?;
        *out = into_handle(parse_param_json(s)?)?;
        Ok(())
    })
}

/// Load a built-in example such as `"moeglin-s8"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ap_param_builtin(name: *const c_char, out: *mut *mut ApParam) -> i32 {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        *out = ptr::null_mut();
        let s = text(name, "name")?;
        *out = into_handle(builtin(s)?)?;
        Ok(())
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `param` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ap_param_free(param: *mut ApParam) {
    if !param.is_null() {
        drop(Box::from_raw(param));
    }
}

/// Number of block occurrences; the length expected by `ap_decide`.
///
/// # Safety
/// `param` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ap_param_block_count(param: *const ApParam, out: *mut usize) -> i32 {
    guard(|| {
        let p = param.as_ref().ok_or(Fail::Null("param"))?;
        let out = out.as_mut().ok_or(Fail::Null("out"))?;
        *out = p.psi.len();
        Ok(())
    })
}

/// Decide one `(l, eta)`, both indexed by occurrence; `eta` entries are
/// `1` or `-1`. Writes 1 (nonvanishing) or 0 to `*out`.
///
/// # Safety
/// `l` and `eta` must point to `n` readable elements; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ap_decide(
    param: *const ApParam,
    l: *const u32,
    eta: *const i8,
    n: usize,
    out: *mut i32,
) -> i32 {
    guard(|| {
        let p = param.as_ref().ok_or(Fail::Null("param"))?;
        let out = out.as_mut().ok_or(Fail::Null("out"))?;
        if n > 0 && (l.is_null() || eta.is_null()) {
            return Err(Fail::Null("l or eta"));
        }
        let (l, eta) = if n == 0 {
            (Vec::new(), Vec::new())
        } else {
            (
                std::slice::from_raw_parts(l, n).to_vec(),
                std::slice::from_raw_parts(eta, n).to_vec(),
            )
        };
        let eta = eta
            .iter()
            .map(|&e| {
                Sign::from_i64(e as i64).ok_or_else(|| Error::InvalidData(format!("eta entry {e}")))
            })
            .collect::<apacket::Result<Vec<_>>>()?;
        let v = Engine::new().is_nonvanishing(&p.psi, &p.order, &SignedData::new(l, eta))?;
        *out = v as i32;
        Ok(())
    })
}

/// Packet size under the handle's order.
///
/// # Safety
/// `param` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ap_packet_size(param: *const ApParam, out: *mut u64) -> i32 {
    guard(|| {
        let p = param.as_ref().ok_or(Fail::Null("param"))?;
        let out = out.as_mut().ok_or(Fail::Null("out"))?;
        *out = enumerate_with(&p.psi, &p.order, EnumerateOptions::default())?
            .members
            .len() as u64;
        Ok(())
    })
}

/// Message for the last failed call on this thread, or an empty string.
/// Valid until the next call into the library from this thread.
#[no_mangle]
pub extern "C" fn ap_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
