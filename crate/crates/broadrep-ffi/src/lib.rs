//! C ABI over the toolkit's closed-form entry points: system parameters as
//! an opaque handle, trade-off evaluation, the packet-count target, and the
//! transmission-rank probability.
//!
//! Conventions shared by every function:
//! - fractional inputs and outputs cross the boundary as NUL-terminated
//!   rational strings ("5/14", "0.5", "2"), so nothing is rounded;
//! - fallible functions return a `BR_*` status code and write results
//!   through out-pointers, which are left untouched on failure;
//! - returned strings are owned by the caller and freed with
//!   [`br_string_free`];
//! - on a non-zero status, [`br_last_error`] returns a message describing
//!   the failure on the current thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fmt::Display;

use broadrep::ratio::parse_ratio;
use broadrep::sim::t_fullrank_probability;
use broadrep::tradeoff::{
    alpha_star, mbr_point, min_feasible_gamma, msr_point, pstar, SystemParams,
};
use num::{BigRational, One};

/// Success.
pub const BR_OK: i32 = 0;
/// A required pointer argument was NULL.
pub const BR_ERR_NULL_ARGUMENT: i32 = 1;
/// A string argument was not valid UTF-8.
pub const BR_ERR_UTF8: i32 = 2;
/// The arguments describe no admissible system (domain validation failed).
pub const BR_ERR_INVALID: i32 = 3;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(code: i32, msg: impl Display) -> i32 {
    let text = msg.to_string().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(CString::new(text).expect("NUL stripped above"));
    });
    code
}

/// Message for the most recent failure on this thread, or NULL if every call
/// so far succeeded. The pointer stays valid until the next failing call on
/// the same thread; do not free it.
#[no_mangle]
pub extern "C" fn br_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.as_ptr(),
        None => std::ptr::null(),
    })
}

/// Free a string returned through any `char **` out-parameter. NULL is a
/// harmless no-op.
///
/// # Safety
/// `s` must be NULL or a pointer previously returned by this library and not
/// yet freed.
#[no_mangle]
pub unsafe extern "C" fn br_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// System parameters for one storage instance. Opaque; create with
/// [`br_params_new`], destroy with [`br_params_free`].
pub struct BrParams(SystemParams);

unsafe fn read_ratio(
    ptr: *const c_char,
    default: BigRational,
    what: &str,
) -> Result<BigRational, i32> {
    if ptr.is_null() {
        return Ok(default);
    }
    let text = CStr::from_ptr(ptr)
        .to_str()
        .map_err(|e| fail(BR_ERR_UTF8, format!("{what}: {e}")))?;
    parse_ratio(text).map_err(|e| fail(BR_ERR_INVALID, e))
}

unsafe fn write_string(out: *mut *mut c_char, value: String) -> i32 {
    let owned = CString::new(value).expect("rational strings never contain NUL");
    *out = owned.into_raw();
    BR_OK
}

/// Create a parameter handle for an (n, k, d, r) system storing a file of
/// size `file_size` with surviving node fraction `rho`. `rho` defaults to 0
/// and `file_size` to 1 when NULL. On success writes the handle to `out` and
/// returns BR_OK.
///
/// # Safety
/// `out` must point to writable memory for one pointer; `rho` and
/// `file_size` must each be NULL or a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn br_params_new(
    n: u32,
    k: u32,
    d: u32,
    r: u32,
    rho: *const c_char,
    file_size: *const c_char,
    out: *mut *mut BrParams,
) -> i32 {
    if out.is_null() {
        return fail(BR_ERR_NULL_ARGUMENT, "out is NULL");
    }
    let rho = match read_ratio(rho, num::Zero::zero(), "rho") {
        Ok(v) => v,
        Err(code) => return code,
    };
    let m = match read_ratio(file_size, BigRational::one(), "file_size") {
        Ok(v) => v,
        Err(code) => return code,
    };
    match SystemParams::new(n as usize, k as usize, d as usize, r as usize, rho, m) {
        Ok(p) => {
            *out = Box::into_raw(Box::new(BrParams(p)));
            BR_OK
        }
        Err(e) => fail(BR_ERR_INVALID, e),
    }
}

/// Destroy a handle from [`br_params_new`]. NULL is a harmless no-op.
///
/// # Safety
/// `p` must be NULL or an unfreed handle from [`br_params_new`].
#[no_mangle]
pub unsafe extern "C" fn br_params_free(p: *mut BrParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

unsafe fn borrow_params<'a>(p: *const BrParams) -> Result<&'a SystemParams, i32> {
    p.as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| fail(BR_ERR_NULL_ARGUMENT, "params is NULL"))
}

/// Smallest per-node storage supporting repair bandwidth `gamma`, as an
/// exact rational string.
///
/// # Safety
/// `p` must be a live handle, `gamma` a NUL-terminated string, and
/// `out_alpha` writable for one pointer.
#[no_mangle]
pub unsafe extern "C" fn br_alpha_star(
    p: *const BrParams,
    gamma: *const c_char,
    out_alpha: *mut *mut c_char,
) -> i32 {
    let params = match borrow_params(p) {
        Ok(v) => v,
        Err(code) => return code,
    };
    if gamma.is_null() || out_alpha.is_null() {
        return fail(BR_ERR_NULL_ARGUMENT, "gamma or out_alpha is NULL");
    }
    let gamma = match read_ratio(gamma, BigRational::one(), "gamma") {
        Ok(v) => v,
        Err(code) => return code,
    };
    match alpha_star(params, &gamma) {
        Ok(alpha) => write_string(out_alpha, alpha.to_string()),
        Err(e) => fail(BR_ERR_INVALID, e),
    }
}

/// Smallest feasible repair bandwidth for the instance (the threshold below
/// which no storage amount suffices), as an exact rational string.
///
/// # Safety
/// `p` must be a live handle and `out_gamma` writable for one pointer.
#[no_mangle]
pub unsafe extern "C" fn br_min_feasible_gamma(
    p: *const BrParams,
    out_gamma: *mut *mut c_char,
) -> i32 {
    let params = match borrow_params(p) {
        Ok(v) => v,
        Err(code) => return code,
    };
    if out_gamma.is_null() {
        return fail(BR_ERR_NULL_ARGUMENT, "out_gamma is NULL");
    }
    write_string(out_gamma, min_feasible_gamma(params).to_string())
}

/// The minimum-storage corner of the trade-off curve as two exact rational
/// strings. Either out-pointer may be NULL to skip that coordinate.
///
/// # Safety
/// `p` must be a live handle; non-NULL out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn br_msr_point(
    p: *const BrParams,
    out_gamma: *mut *mut c_char,
    out_alpha: *mut *mut c_char,
) -> i32 {
    let params = match borrow_params(p) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let pt = msr_point(params);
    if !out_gamma.is_null() {
        write_string(out_gamma, pt.gamma.to_string());
    }
    if !out_alpha.is_null() {
        write_string(out_alpha, pt.alpha.to_string());
    }
    BR_OK
}

/// The minimum-bandwidth corner of the trade-off curve as two exact rational
/// strings. Either out-pointer may be NULL to skip that coordinate.
///
/// # Safety
/// `p` must be a live handle; non-NULL out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn br_mbr_point(
    p: *const BrParams,
    out_gamma: *mut *mut c_char,
    out_alpha: *mut *mut c_char,
) -> i32 {
    let params = match borrow_params(p) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let pt = mbr_point(params);
    if !out_gamma.is_null() {
        write_string(out_gamma, pt.gamma.to_string());
    }
    if !out_alpha.is_null() {
        write_string(out_alpha, pt.alpha.to_string());
    }
    BR_OK
}

/// Number of packets a file must be split into so that trade-off index
/// `j_bar` with expansion factor `xi` meets the reconstruction bound.
/// `rho` defaults to 0 when NULL.
///
/// # Safety
/// `rho` must be NULL or a NUL-terminated string; `out` must be writable
/// for one u64.
#[no_mangle]
pub unsafe extern "C" fn br_pstar(
    k: u32,
    d: u32,
    r: u32,
    j_bar: u32,
    rho: *const c_char,
    xi: u32,
    out: *mut u64,
) -> i32 {
    if out.is_null() {
        return fail(BR_ERR_NULL_ARGUMENT, "out is NULL");
    }
    let rho = match read_ratio(rho, num::Zero::zero(), "rho") {
        Ok(v) => v,
        Err(code) => return code,
    };
    match pstar(k as usize, d as usize, r as usize, j_bar as usize, &rho, xi as usize) {
        Ok(v) => {
            *out = v;
            BR_OK
        }
        Err(e) => fail(BR_ERR_INVALID, e),
    }
}

/// Probability that the stacked transmission-coefficient matrix of two
/// helper rounds keeps full column rank, as an exact rational string.
///
/// # Safety
/// `out` must be writable for one pointer.
#[no_mangle]
pub unsafe extern "C" fn br_t_fullrank(
    d: u32,
    r: u32,
    j_bar: u32,
    e: u32,
    out: *mut *mut c_char,
) -> i32 {
    if out.is_null() {
        return fail(BR_ERR_NULL_ARGUMENT, "out is NULL");
    }
    match t_fullrank_probability(d as usize, r as usize, j_bar as usize, e as usize) {
        Ok(v) => write_string(out, v.to_string()),
        Err(e) => fail(BR_ERR_INVALID, e),
    }
}
