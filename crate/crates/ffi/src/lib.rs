//! C ABI over `supergeom`.
//!
//! Objects are opaque handles released with their `*_free` function.
//! Every fallible call returns an [`SgStatus`]; on failure the message is
//! available from [`sg_last_error`] on the same thread. Strings handed out
//! by the library are released with [`sg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use supergeom::exactpoly::Polynomial;
use supergeom::groebner::{Budget, Ideal};
use supergeom::invariants::{Setting, Space};
use supergeom::{groupoid, invariants, Error};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SgStatus {
    Ok = 0,
    /// Malformed input: parse errors, bad JSON, invalid arguments.
    InvalidArgument = 1,
    /// Well-formed input outside the domain of the operation.
    DomainError = 2,
    /// The Gröbner budget was exhausted.
    BudgetExceeded = 3,
    /// A required pointer was null or a string was not UTF-8.
    NullPointer = 4,
    /// The library panicked; this is a bug.
    Internal = 5,
}

/// Algebra type and space, e.g. `gl(2|1)` on the torus.
pub struct SgSetting(Setting);

/// A polynomial in the coordinate ring of a setting.
pub struct SgPoly(Polynomial);

/// An ideal in the coordinate ring of a setting.
pub struct SgIdeal(Ideal);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(SgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e.exit_code() {
            1 => SgStatus::InvalidArgument,
            3 => SgStatus::BudgetExceeded,
            _ => SgStatus::DomainError,
        };
        Failure(status, e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure(SgStatus::InvalidArgument, format!("invalid JSON: {e}"))
    }
}

fn null(what: &str) -> Failure {
    Failure(SgStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            SgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal error");
            SgStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(SgStatus::NullPointer, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<T>(p: *mut T, what: &str, v: T) -> Result<(), Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    p.write(v);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message of the last failed call on this thread, or the empty string.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn sg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn sg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a setting from a type name such as `gl(2|1)`, `osp(5|4)` or
/// `q(3)` and a space, `additive` or `torus`.
///
/// # Safety
/// `ty` and `space` must be null or NUL-terminated strings; `out_setting` must be
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn sg_setting_new(
    ty: *const c_char,
    space: *const c_char,
    out_setting: *mut *mut SgSetting,
) -> SgStatus {
    guard(|| {
        let ty = text(ty, "type")?.parse()?;
        let space: Space = text(space, "space")?.parse()?;
        let s = Setting::new(ty, space)?;
        out(out_setting, "out_setting", Box::into_raw(Box::new(SgSetting(s))))
    })
}

/// # Safety
/// `s` must be null or a live handle from [`sg_setting_new`].
#[no_mangle]
pub unsafe extern "C" fn sg_setting_free(s: *mut SgSetting) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Dimension of the setting's space.
///
/// # Safety
/// `s` must be null or a live handle; `out_dim` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn sg_setting_dim(s: *const SgSetting, out_dim: *mut usize) -> SgStatus {
    guard(|| out(out_dim, "out_dim", handle(s, "setting")?.0.dim()))
}

/// Parses a polynomial in the setting's variables (`X1, Y1, …` additively,
/// `x1, y1, …` on the torus).
///
/// # Safety
/// Pointers must be null or valid as documented on the other calls.
#[no_mangle]
pub unsafe extern "C" fn sg_poly_parse(
    s: *const SgSetting,
    src: *const c_char,
    out_poly: *mut *mut SgPoly,
) -> SgStatus {
    guard(|| {
        let p = handle(s, "setting")?.0.parse(text(src, "polynomial")?)?;
        out(out_poly, "out_poly", Box::into_raw(Box::new(SgPoly(p))))
    })
}

/// # Safety
/// `p` must be null or a live polynomial handle.
#[no_mangle]
pub unsafe extern "C" fn sg_poly_free(p: *mut SgPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Canonical text of a polynomial; release with [`sg_string_free`].
///
/// # Safety
/// `p` must be null or a live handle; `out_text` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn sg_poly_to_string(p: *const SgPoly, out_text: *mut *mut c_char) -> SgStatus {
    guard(|| out(out_text, "out_text", owned_string(handle(p, "poly")?.0.to_string())))
}

/// Evaluates a polynomial at a point given as JSON: an array of rationals
/// such as `["1/2", 3]`, or an object with `eps`/`delta` (`x`/`y`) arrays.
/// The value is returned as text; release with [`sg_string_free`].
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sg_poly_eval(
    s: *const SgSetting,
    p: *const SgPoly,
    point_json: *const c_char,
    out_value: *mut *mut c_char,
) -> SgStatus {
    guard(|| {
        let s = &handle(s, "setting")?.0;
        let pt = groupoid::point_from_json(s, &serde_json::from_str(text(point_json, "point")?)?)?;
        let v = handle(p, "poly")?.0.eval(&pt)?;
        out(out_value, "out_value", owned_string(supergeom::exactpoly::format_rational(&v)))
    })
}

/// Membership oracle for the supersymmetric invariants. With `strict`,
/// the condition is checked along every root rather than one per W-orbit.
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sg_is_supersymmetric(
    s: *const SgSetting,
    p: *const SgPoly,
    strict: bool,
    out_member: *mut bool,
) -> SgStatus {
    guard(|| {
        let m = invariants::supersymmetry_check(&handle(p, "poly")?.0, &handle(s, "setting")?.0, strict)?;
        out(out_member, "out_member", m.member)
    })
}

/// The distinguished element `T` of the setting.
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sg_t_element(s: *const SgSetting, out_poly: *mut *mut SgPoly) -> SgStatus {
    guard(|| {
        let t = invariants::t_element(&handle(s, "setting")?.0)?.poly;
        out(out_poly, "out_poly", Box::into_raw(Box::new(SgPoly(t))))
    })
}

/// Image under the evaluation map to the reduced setting. Fails with
/// `DomainError` when the reduced rank is too small.
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sg_ev(s: *const SgSetting, p: *const SgPoly, out_poly: *mut *mut SgPoly) -> SgStatus {
    guard(|| {
        let e = invariants::ev_map(&handle(p, "poly")?.0, &handle(s, "setting")?.0)?;
        out(out_poly, "out_poly", Box::into_raw(Box::new(SgPoly(e))))
    })
}

/// Atypicality of a point (JSON as in [`sg_poly_eval`]).
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sg_atyp(s: *const SgSetting, point_json: *const c_char, out_atyp: *mut usize) -> SgStatus {
    guard(|| {
        let s = &handle(s, "setting")?.0;
        let pt = groupoid::point_from_json(s, &serde_json::from_str(text(point_json, "point")?)?)?;
        out(out_atyp, "out_atyp", groupoid::atyp(s, &pt)?)
    })
}

/// Whether two points lie in the same groupoid orbit.
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sg_equivalent(
    s: *const SgSetting,
    a_json: *const c_char,
    b_json: *const c_char,
    out_equivalent: *mut bool,
) -> SgStatus {
    guard(|| {
        let s = &handle(s, "setting")?.0;
        let a = groupoid::point_from_json(s, &serde_json::from_str(text(a_json, "a")?)?)?;
        let b = groupoid::point_from_json(s, &serde_json::from_str(text(b_json, "b")?)?)?;
        out(out_equivalent, "out_equivalent", groupoid::equivalent(s, &a, &b)?)
    })
}

/// Ideal from a JSON array of generator strings, e.g. `["X1+Y1"]`.
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sg_ideal_new(
    s: *const SgSetting,
    gens_json: *const c_char,
    out_ideal: *mut *mut SgIdeal,
) -> SgStatus {
    guard(|| {
        let s = &handle(s, "setting")?.0;
        let gens: Vec<String> = serde_json::from_str(text(gens_json, "generators")?)?;
        let polys = gens.iter().map(|g| s.parse(g)).collect::<Result<Vec<_>, _>>()?;
        let ideal = Ideal::new(s.ring(), polys)?;
        out(out_ideal, "out_ideal", Box::into_raw(Box::new(SgIdeal(ideal))))
    })
}

/// # Safety
/// `i` must be null or a live ideal handle.
#[no_mangle]
pub unsafe extern "C" fn sg_ideal_free(i: *mut SgIdeal) {
    if !i.is_null() {
        drop(Box::from_raw(i));
    }
}

/// Ideal membership with the default budget.
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sg_ideal_contains(i: *const SgIdeal, p: *const SgPoly, out_member: *mut bool) -> SgStatus {
    guard(|| {
        let m = handle(i, "ideal")?.0.contains(&handle(p, "poly")?.0, &Budget::from_env())?;
        out(out_member, "out_member", m)
    })
}

/// Reduced grevlex Gröbner basis as a JSON array of strings; release with
/// [`sg_string_free`].
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sg_ideal_groebner(i: *const SgIdeal, out_json: *mut *mut c_char) -> SgStatus {
    guard(|| {
        let basis = handle(i, "ideal")?.0.canonical_form(&Budget::from_env())?;
        out(out_json, "out_json", owned_string(serde_json::to_string(&basis)?))
    })
}

/// Runs the command-line front end on a JSON array of arguments (without
/// the program name), e.g. `["--type", "gl(2|1)", "describe"]`. The JSON
/// document it prints is returned in `out_json` and its exit code in
/// `out_code`; a nonzero exit code is not a call failure. Usage errors
/// yield the usage text instead of JSON, with exit code 1.
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sg_cli_run(
    args_json: *const c_char,
    out_json: *mut *mut c_char,
    out_code: *mut i32,
) -> SgStatus {
    guard(|| {
        let args: Vec<String> = serde_json::from_str(text(args_json, "arguments")?)?;
        if out_json.is_null() || out_code.is_null() {
            return Err(null("output pointer"));
        }
        let outcome = supergeom::cli::run(std::iter::once("supergeom".to_string()).chain(args));
        out(out_code, "out_code", outcome.code)?;
        out(out_json, "out_json", owned_string(outcome.stdout))
    })
}
