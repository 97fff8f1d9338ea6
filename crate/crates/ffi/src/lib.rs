//! C interface to the engine. Data and runs are opaque handles; every entry
//! point returns a [`GicStatus`], with details available from
//! [`gic_last_error_message`] on the calling thread.
//!
//! Strings returned through out-parameters are owned by the caller and must
//! be released with [`gic_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use gic::datum::{load_datum_str, Conventions, FlagOrder, GradedDatum, SignConvention};
use gic::engine::{Engine, RunResult};
use gic::report::{build_report, to_csv, to_json};
use gic::type_a::{build_datum, TypeASpec};
use gic::Error;

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GicStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    DatumInvalid = 4,
    AlgorithmBroken = 5,
    TooLarge = 6,
    OutOfRange = 7,
    Internal = 8,
}

/// `sign`: 0 for `v^tau`, 1 for `(-v)^tau`. `flag_order`: 0 ascending,
/// 1 descending.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct GicConventions {
    pub sign: i32,
    pub flag_order: i32,
}

/// A loaded datum.
pub struct GicDatum {
    inner: Arc<GradedDatum>,
    conv: Conventions,
}

/// A finished run.
pub struct GicRun {
    inner: Arc<RunResult>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: GicStatus, msg: &str) -> GicStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> GicStatus {
    let status = match &e {
        Error::Parse(_) | Error::Json(_) => GicStatus::ParseError,
        Error::DatumInvalid(_) => GicStatus::DatumInvalid,
        Error::AlgorithmBroken { .. } | Error::OracleMismatch(_) => GicStatus::AlgorithmBroken,
        Error::TooLarge(_) => GicStatus::TooLarge,
        _ => GicStatus::Internal,
    };
    fail(status, &e.to_string())
}

fn guard(f: impl FnOnce() -> GicStatus) -> GicStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(GicStatus::Internal, "panic inside the engine"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, GicStatus> {
    if s.is_null() {
        return Err(fail(GicStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(GicStatus::InvalidUtf8, "string argument is not UTF-8"))
}

fn conventions(c: GicConventions) -> Result<Conventions, GicStatus> {
    let sign = match c.sign {
        0 => SignConvention::PlusV,
        1 => SignConvention::PrintedMinusV,
        _ => return Err(fail(GicStatus::OutOfRange, "sign must be 0 or 1")),
    };
    let flag_order = match c.flag_order {
        0 => FlagOrder::Ascending,
        1 => FlagOrder::Descending,
        _ => return Err(fail(GicStatus::OutOfRange, "flag_order must be 0 or 1")),
    };
    Ok(Conventions { sign, flag_order })
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> GicStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            GicStatus::Ok
        }
        Err(_) => fail(GicStatus::Internal, "output contains a NUL byte"),
    }
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Default conventions.
#[no_mangle]
pub extern "C" fn gic_conventions_default() -> GicConventions {
    GicConventions {
        sign: 0,
        flag_order: 0,
    }
}

/// Builds a type-A datum from a spec such as `glq:0,0,1;n=1`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gic_datum_from_gl(
    spec: *const c_char,
    conv: GicConventions,
    out: *mut *mut GicDatum,
) -> GicStatus {
    guard(|| {
        if out.is_null() {
            return fail(GicStatus::NullPointer, "out is null");
        }
        let s = try_status!(read_str(spec));
        let conv = try_status!(conventions(conv));
        let spec: TypeASpec = try_status!(s.parse().map_err(from_error));
        let d = try_status!(build_datum(&spec, conv).map_err(from_error));
        *out = Box::into_raw(Box::new(GicDatum { inner: d, conv }));
        GicStatus::Ok
    })
}

/// Loads a datum table from JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gic_datum_from_json(
    json: *const c_char,
    conv: GicConventions,
    out: *mut *mut GicDatum,
) -> GicStatus {
    guard(|| {
        if out.is_null() {
            return fail(GicStatus::NullPointer, "out is null");
        }
        let s = try_status!(read_str(json));
        let conv = try_status!(conventions(conv));
        let d = try_status!(load_datum_str(s, conv).map_err(from_error));
        *out = Box::into_raw(Box::new(GicDatum { inner: d, conv }));
        GicStatus::Ok
    })
}

/// Number of basis elements.
///
/// # Safety
/// `datum` must come from this library and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gic_datum_dim(datum: *const GicDatum, out: *mut usize) -> GicStatus {
    guard(|| {
        if datum.is_null() || out.is_null() {
            return fail(GicStatus::NullPointer, "null argument");
        }
        *out = (*datum).inner.dim();
        GicStatus::Ok
    })
}

/// # Safety
/// `datum` must come from this library or be null; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn gic_datum_free(datum: *mut GicDatum) {
    if !datum.is_null() {
        drop(Box::from_raw(datum));
    }
}

/// Runs the engine on `datum`.
///
/// # Safety
/// `datum` must come from this library and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gic_run(datum: *const GicDatum, out: *mut *mut GicRun) -> GicStatus {
    guard(|| {
        if datum.is_null() || out.is_null() {
            return fail(GicStatus::NullPointer, "null argument");
        }
        let d = &*datum;
        let r = try_status!(Engine::new(d.conv).run(&d.inner).map_err(from_error));
        *out = Box::into_raw(Box::new(GicRun { inner: r }));
        GicStatus::Ok
    })
}

/// # Safety
/// `run` must come from this library or be null; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn gic_run_free(run: *mut GicRun) {
    if !run.is_null() {
        drop(Box::from_raw(run));
    }
}

unsafe fn report_text(
    run: *const GicRun,
    n: i64,
    all: bool,
    csv: bool,
    out: *mut *mut c_char,
) -> GicStatus {
    if run.is_null() || out.is_null() {
        return fail(GicStatus::NullPointer, "null argument");
    }
    let filter = if all { None } else { Some(n) };
    let rep = match build_report(&(*run).inner, filter) {
        Ok(r) => r,
        Err(Error::DatumInvalid(m)) => return fail(GicStatus::OutOfRange, &m),
        Err(e) => return from_error(e),
    };
    let text = try_status!(if csv { to_csv(&rep) } else { to_json(&rep) }.map_err(from_error));
    write_string(out, text)
}

/// The run as JSON; `all_degrees != 0` ignores `n`.
///
/// # Safety
/// `run` must come from this library and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gic_run_to_json(
    run: *const GicRun,
    n: i64,
    all_degrees: i32,
    out: *mut *mut c_char,
) -> GicStatus {
    guard(|| report_text(run, n, all_degrees != 0, false, out))
}

/// The f-, e- and weight-dimension matrices as CSV.
///
/// # Safety
/// `run` must come from this library and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gic_run_to_csv(
    run: *const GicRun,
    n: i64,
    all_degrees: i32,
    out: *mut *mut c_char,
) -> GicStatus {
    guard(|| report_text(run, n, all_degrees != 0, true, out))
}

/// Number of simple objects in degree `n`.
///
/// # Safety
/// `run` must come from this library and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gic_run_size(run: *const GicRun, n: i64, out: *mut usize) -> GicStatus {
    guard(|| {
        if run.is_null() || out.is_null() {
            return fail(GicStatus::NullPointer, "null argument");
        }
        match (*run).inner.grading(n) {
            Some(g) => {
                *out = g.z.len();
                GicStatus::Ok
            }
            None => fail(GicStatus::OutOfRange, &format!("no grading n={n}")),
        }
    })
}

/// Label of object `i` in degree `n`.
///
/// # Safety
/// `run` must come from this library and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gic_run_label(
    run: *const GicRun,
    n: i64,
    i: usize,
    out: *mut *mut c_char,
) -> GicStatus {
    guard(|| {
        if run.is_null() || out.is_null() {
            return fail(GicStatus::NullPointer, "null argument");
        }
        let Some(g) = (*run).inner.grading(n) else {
            return fail(GicStatus::OutOfRange, &format!("no grading n={n}"));
        };
        match g.z.get(i) {
            Some(z) => write_string(out, z.kappa.to_string()),
            None => fail(GicStatus::OutOfRange, &format!("index {i} out of range")),
        }
    })
}

/// Entry `(i, j)` of the multiplicity matrix in degree `n`, as text.
///
/// # Safety
/// `run` must come from this library and `out` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gic_run_f_entry(
    run: *const GicRun,
    n: i64,
    i: usize,
    j: usize,
    out: *mut *mut c_char,
) -> GicStatus {
    guard(|| {
        if run.is_null() || out.is_null() {
            return fail(GicStatus::NullPointer, "null argument");
        }
        let Some(g) = (*run).inner.grading(n) else {
            return fail(GicStatus::OutOfRange, &format!("no grading n={n}"));
        };
        match g.c_matrix.get(i).and_then(|r| r.get(j)) {
            Some(x) => write_string(out, x.to_string()),
            None => fail(
                GicStatus::OutOfRange,
                &format!("entry ({i}, {j}) out of range"),
            ),
        }
    })
}

/// # Safety
/// `s` must come from this library or be null; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn gic_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn gic_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn gic_version() -> *const c_char {
    static V: &[u8] = concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes();
    V.as_ptr().cast()
}
