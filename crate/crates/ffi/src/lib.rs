//! C interface to the finite, dense and derivation checkers.
//!
//! Objects cross the boundary as opaque handles created by `*_parse` or
//! `*_new` functions and released with the matching `*_free`. Every fallible
//! call returns a [`BhStatus`]; on failure [`bh_last_error`] describes the
//! problem. Strings returned to the caller are released with
//! [`bh_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bhlogic::dense::DenseModel;
use bhlogic::finite::{
    check_axiom, frame_valid_finite_with_budget, AxiomId, FiniteError, Frame3, DEFAULT_BUDGET, MAX_WORLDS,
};
use bhlogic::proof::Derivation;
use bhlogic::syntax::{builtin, parse, Formula};

/// Result of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    LimitExceeded = 5,
    Panic = 6,
}

/// A parsed formula.
pub struct BhFormula(Formula);

/// A finite betweenness frame.
pub struct BhFrame(Frame3);

/// A dense model: a carrier with a valuation.
pub struct BhDenseModel(DenseModel);

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

struct Fail(BhStatus, String);

impl Fail {
    fn null(what: &str) -> Fail {
        Fail(BhStatus::NullPointer, format!("{what} is null"))
    }
}

/// Runs `body`, recording its error message and trapping panics.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> BhStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => BhStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BhStatus::Panic
        }
    }
}

/// # Safety
/// `p` is null or a NUL-terminated string valid for the call.
unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(BhStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` is null or points to a live `T`.
unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail::null(what))
}

/// # Safety
/// `out` is null or valid for a write.
unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn finite_fail(e: FiniteError) -> Fail {
    let status = match e {
        FiniteError::TooManyWorlds { .. } | FiniteError::BudgetExceeded { .. } => BhStatus::LimitExceeded,
        FiniteError::Syntax { .. } => BhStatus::ParseError,
        _ => BhStatus::InvalidArgument,
    };
    Fail(status, e.to_string())
}

/// Message describing the last failed call on this thread, or null. The
/// pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn bh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by the library.
///
/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses formula text, or the name of a built-in formula such as `HB4`.
///
/// # Safety
/// `input` is a NUL-terminated string; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn bh_formula_parse(input: *const c_char, out: *mut *mut BhFormula) -> BhStatus {
    guard(|| {
        let t = text(input, "formula text")?;
        let f = match builtin(t.trim()) {
            Some(f) => f,
            None => parse(t).map_err(|e| Fail(BhStatus::ParseError, e.to_string()))?,
        };
        put(out, Box::into_raw(Box::new(BhFormula(f))))
    })
}

/// Canonical text of a formula, to be released with [`bh_string_free`].
///
/// # Safety
/// `f` is a live formula handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn bh_formula_to_string(f: *const BhFormula, out: *mut *mut c_char) -> BhStatus {
    guard(|| {
        let f = borrow(f, "formula")?;
        let s = CString::new(f.0.to_string()).map_err(|_| Fail(BhStatus::Panic, "NUL in formula".into()))?;
        put(out, s.into_raw())
    })
}

/// Whether the formula contains no propositional variables.
///
/// # Safety
/// `f` is a live formula handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn bh_formula_is_pure(f: *const BhFormula, out: *mut bool) -> BhStatus {
    guard(|| put(out, borrow(f, "formula")?.0.is_pure()))
}

/// # Safety
/// `f` is null or a formula handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bh_formula_free(f: *mut BhFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// An empty frame on `worlds` worlds, at most 128.
///
/// # Safety
/// `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn bh_frame_new(worlds: usize, out: *mut *mut BhFrame) -> BhStatus {
    guard(|| {
        if worlds > MAX_WORLDS {
            return Err(finite_fail(FiniteError::TooManyWorlds {
                n: worlds,
                max: MAX_WORLDS,
            }));
        }
        put(out, Box::into_raw(Box::new(BhFrame(Frame3::new(worlds)))))
    })
}

/// Reads a frame file (`worlds N` and `B x y z` lines).
///
/// # Safety
/// `input` is a NUL-terminated string; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn bh_frame_parse(input: *const c_char, out: *mut *mut BhFrame) -> BhStatus {
    guard(|| {
        let frame = Frame3::parse(text(input, "frame text")?).map_err(finite_fail)?;
        put(out, Box::into_raw(Box::new(BhFrame(frame))))
    })
}

/// Adds the triple `(x, y, z)`.
///
/// # Safety
/// `f` is a live frame handle not used concurrently.
#[no_mangle]
pub unsafe extern "C" fn bh_frame_insert(f: *mut BhFrame, x: usize, y: usize, z: usize) -> BhStatus {
    guard(|| {
        let f = f.as_mut().ok_or_else(|| Fail::null("frame"))?;
        let n = f.0.worlds();
        if let Some(w) = [x, y, z].into_iter().find(|w| *w >= n) {
            return Err(finite_fail(FiniteError::WorldOutOfRange { world: w, n }));
        }
        f.0.insert(x, y, z);
        Ok(())
    })
}

/// # Safety
/// `f` is a live frame handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn bh_frame_worlds(f: *const BhFrame, out: *mut usize) -> BhStatus {
    guard(|| put(out, borrow(f, "frame")?.0.worlds()))
}

/// Checks a named first-order frame condition such as `B4` or `B6six`.
///
/// # Safety
/// `f` is a live frame handle, `axiom` a NUL-terminated string and `holds`
/// valid for a write.
#[no_mangle]
pub unsafe extern "C" fn bh_frame_check_axiom(f: *const BhFrame, axiom: *const c_char, holds: *mut bool) -> BhStatus {
    guard(|| {
        let f = borrow(f, "frame")?;
        let id: AxiomId = text(axiom, "axiom name")?.parse().map_err(finite_fail)?;
        put(holds, check_axiom(&f.0, id).holds)
    })
}

/// Decides whether `phi` is valid on the frame; a `budget` of zero uses the
/// default bound on valuations.
///
/// # Safety
/// `f` and `phi` are live handles; `holds` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn bh_frame_valid(
    f: *const BhFrame,
    phi: *const BhFormula,
    budget: u64,
    holds: *mut bool,
) -> BhStatus {
    guard(|| {
        let f = borrow(f, "frame")?;
        let phi = borrow(phi, "formula")?;
        let budget = if budget == 0 { DEFAULT_BUDGET } else { budget };
        let r = frame_valid_finite_with_budget(&f.0, &phi.0, budget).map_err(finite_fail)?;
        put(holds, r.holds)
    })
}

/// # Safety
/// `f` is null or a frame handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bh_frame_free(f: *mut BhFrame) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Reads a dense model file (`carrier ...` and `V name: ...` lines).
///
/// # Safety
/// `input` is a NUL-terminated string; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn bh_dense_model_parse(input: *const c_char, out: *mut *mut BhDenseModel) -> BhStatus {
    guard(|| {
        let m = DenseModel::parse(text(input, "model text")?).map_err(|e| Fail(BhStatus::ParseError, e.to_string()))?;
        put(out, Box::into_raw(Box::new(BhDenseModel(m))))
    })
}

/// Sets one symbol, e.g. `p=(0,1) {2}` or `i=1/2`.
///
/// # Safety
/// `m` is a live model handle not used concurrently; `assignment` is a
/// NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn bh_dense_model_assign(m: *mut BhDenseModel, assignment: *const c_char) -> BhStatus {
    guard(|| {
        let m = m.as_mut().ok_or_else(|| Fail::null("model"))?;
        let a = text(assignment, "assignment")?;
        m.0.assign(a).map_err(|e| Fail(BhStatus::InvalidArgument, e))
    })
}

/// The extension of `phi` in set syntax, released with [`bh_string_free`].
///
/// # Safety
/// `m` and `phi` are live handles; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn bh_dense_extension(
    m: *const BhDenseModel,
    phi: *const BhFormula,
    out: *mut *mut c_char,
) -> BhStatus {
    guard(|| {
        let m = borrow(m, "model")?;
        let phi = borrow(phi, "formula")?;
        let ext =
            m.0.extension(&phi.0)
                .map_err(|e| Fail(BhStatus::InvalidArgument, e.to_string()))?;
        let s = CString::new(ext.to_string()).map_err(|_| Fail(BhStatus::Panic, "NUL in set".into()))?;
        put(out, s.into_raw())
    })
}

/// Whether `phi` is true at every point of the carrier.
///
/// # Safety
/// `m` and `phi` are live handles; `holds` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn bh_dense_holds(m: *const BhDenseModel, phi: *const BhFormula, holds: *mut bool) -> BhStatus {
    guard(|| {
        let m = borrow(m, "model")?;
        let phi = borrow(phi, "formula")?;
        let r =
            m.0.holds_everywhere(&phi.0)
                .map_err(|e| Fail(BhStatus::InvalidArgument, e.to_string()))?;
        put(holds, r.holds)
    })
}

/// # Safety
/// `m` is null or a model handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bh_dense_model_free(m: *mut BhDenseModel) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Checks a derivation file. A well-formed but incorrect derivation returns
/// `Ok` with `valid` false and the diagnostic in [`bh_last_error`].
///
/// # Safety
/// `input` is a NUL-terminated string; `valid` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn bh_derivation_check(input: *const c_char, valid: *mut bool) -> BhStatus {
    let mut diagnostic = None;
    let status = guard(|| {
        let d = Derivation::parse(text(input, "derivation text")?)
            .map_err(|e| Fail(BhStatus::ParseError, e.to_string()))?;
        let r = d.check();
        diagnostic = r.as_ref().err().map(|e| e.to_string());
        put(valid, r.is_ok())
    });
    if let Some(msg) = diagnostic {
        set_error(msg);
    }
    status
}
