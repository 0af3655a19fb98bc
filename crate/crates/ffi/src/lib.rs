//! C interface to the twdr pipeline.
//!
//! Every entry point returns a [`TwdrStatus`]. On failure a description is
//! kept per thread and read with [`twdr_last_error_message`]. Strings handed
//! out must be released with [`twdr_string_free`], contexts with
//! [`twdr_context_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use twdr_core::arith::{infer_nvars, parse_polynomial, MonomialOrder};
use twdr_core::brieskorn::connection_matrix;
use twdr_core::cli::commands::verify_report;
use twdr_core::cli::report::datum_report;
use twdr_core::cli::{Common, Format};
use twdr_core::localmodels::{monomial_koszul, KoszulModel};
use twdr_core::milnor::JacobianContext;
use twdr_core::turrittin::extract_monodromy;
use twdr_core::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwdrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    NonIsolated = 4,
    Computation = 5,
    Panic = 6,
}

/// Jacobian data of one polynomial.
pub struct TwdrContext {
    ctx: JacobianContext,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> TwdrStatus {
    match e {
        Error::Syntax { .. } | Error::NegativeExponent { .. } | Error::UnknownVariable(_) | Error::IndexOutOfRange { .. } => {
            TwdrStatus::Parse
        }
        Error::NotZeroDimensional(_) => TwdrStatus::NonIsolated,
        _ => TwdrStatus::Computation,
    }
}

fn guard(f: impl FnOnce() -> Result<(), TwdrStatus>) -> TwdrStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TwdrStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            TwdrStatus::Panic
        }
    }
}

fn fail(e: Error) -> TwdrStatus {
    set_error(e.to_string());
    status_of(&e)
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, TwdrStatus> {
    if p.is_null() {
        set_error("null pointer argument");
        return Err(TwdrStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        TwdrStatus::InvalidUtf8
    })
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

fn nvars_for(text: &str, nvars: u32) -> usize {
    if nvars == 0 {
        infer_nvars(text)
    } else {
        nvars as usize
    }
}

/// Parses `poly` in `nvars` variables (0 infers) and builds its Jacobian
/// context.
///
/// # Safety
/// `poly` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn twdr_context_new(poly: *const c_char, nvars: u32, out: *mut *mut TwdrContext) -> TwdrStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return Err(TwdrStatus::NullPointer);
        }
        *out = ptr::null_mut();
        let text = read_str(poly)?;
        let n = nvars_for(text, nvars);
        let f = parse_polynomial(text, n).map_err(fail)?;
        let ctx = JacobianContext::new(f, &MonomialOrder::degrevlex(n)).map_err(fail)?;
        *out = Box::into_raw(Box::new(TwdrContext { ctx }));
        Ok(())
    })
}

/// # Safety
/// `ctx` must come from [`twdr_context_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn twdr_context_free(ctx: *mut TwdrContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// # Safety
/// `ctx` must be a live context and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn twdr_context_milnor_number(ctx: *const TwdrContext, out: *mut u64) -> TwdrStatus {
    guard(|| {
        if ctx.is_null() || out.is_null() {
            set_error("null pointer argument");
            return Err(TwdrStatus::NullPointer);
        }
        *out = (*ctx).ctx.milnor_number() as u64;
        Ok(())
    })
}

/// Monodromy datum as a JSON array of parts; free with
/// [`twdr_string_free`].
///
/// # Safety
/// `ctx` must be a live context and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn twdr_context_monodromy_json(ctx: *const TwdrContext, out: *mut *mut c_char) -> TwdrStatus {
    guard(|| {
        if ctx.is_null() || out.is_null() {
            set_error("null pointer argument");
            return Err(TwdrStatus::NullPointer);
        }
        *out = ptr::null_mut();
        let b = connection_matrix(&(*ctx).ctx).map_err(fail)?;
        let e = extract_monodromy(&b, None, false).map_err(fail)?;
        let json = serde_json::to_string(&datum_report(&e.datum)).expect("json");
        *out = to_c(json);
        Ok(())
    })
}

/// Full verification report as JSON, with the exit code the command line
/// would return.
///
/// # Safety
/// `poly` must be a NUL-terminated string; `out` and `exit_code` valid
/// pointers.
#[no_mangle]
pub unsafe extern "C" fn twdr_verify_json(
    poly: *const c_char,
    nvars: u32,
    out: *mut *mut c_char,
    exit_code: *mut i32,
) -> TwdrStatus {
    guard(|| {
        if out.is_null() || exit_code.is_null() {
            set_error("null output pointer");
            return Err(TwdrStatus::NullPointer);
        }
        *out = ptr::null_mut();
        let text = read_str(poly)?;
        let common = Common {
            nvars: Some(nvars_for(text, nvars)),
            order: "degrevlex".into(),
            trunc: None,
            seed: 0,
            format: Format::Json,
            jordan: false,
        };
        let report = verify_report(text, &common).map_err(fail)?;
        *exit_code = report.exit;
        *out = to_c(report.to_json());
        Ok(())
    })
}

/// Rank of the nearby-cycle model of `t = x^μ`.
///
/// # Safety
/// `mu` must point to `len` readable values and `out` be valid.
#[no_mangle]
pub unsafe extern "C" fn twdr_koszul_rank(mu: *const u64, len: usize, out: *mut u64) -> TwdrStatus {
    guard(|| {
        if mu.is_null() || out.is_null() {
            set_error("null pointer argument");
            return Err(TwdrStatus::NullPointer);
        }
        let mu = std::slice::from_raw_parts(mu, len).to_vec();
        let model = KoszulModel::new(mu).map_err(fail)?;
        *out = monomial_koszul(&model).map_err(fail)?.rank as u64;
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn twdr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn twdr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
