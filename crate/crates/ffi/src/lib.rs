//! C ABI over `recop`. Handles are opaque and owned by the caller; every
//! handle and every returned `char *` has a matching `*_free`. Functions
//! return a [`RecopStatus`]; on failure the message is available from
//! [`recop_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use recop::cli::{algebra_of, example_report, pair_report, parse_str, run_args, triple_report, Mode};
use recop::triples::{Check, TripleClassification};
use recop::Error;
use serde_json::{json, Value};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecopStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Jacobi = 4,
    DegenerateForm = 5,
    Precondition = 6,
    Consistency = 7,
    UnknownExample = 8,
    NoMetric = 9,
    Numeric = 10,
    Panic = 11,
    Other = 12,
}

impl From<&Error> for RecopStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) | Error::Antisymmetry { .. } | Error::IndexOutOfRange { .. } => RecopStatus::Parse,
            Error::Jacobi(_) => RecopStatus::Jacobi,
            Error::DegenerateForm(_) | Error::Singular => RecopStatus::DegenerateForm,
            Error::Precondition(_) | Error::DimensionMismatch { .. } | Error::OddDimension(_) => {
                RecopStatus::Precondition
            }
            Error::Consistency(_) => RecopStatus::Consistency,
            Error::UnknownExample(_) => RecopStatus::UnknownExample,
            Error::DegenerateFamily { .. } | Error::StepRejected { .. } => RecopStatus::Numeric,
            _ => RecopStatus::Other,
        }
    }
}

/// Classification of a pair of forms.
pub struct RecopPair {
    tag: CString,
    passed: bool,
    report: Value,
}

/// Classification of a triple of forms, from a document or the catalog.
pub struct RecopTriple {
    tag: CString,
    permutation: [usize; 3],
    signature: Option<(usize, usize)>,
    passed: bool,
    report: Value,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: RecopStatus, msg: &str) -> RecopStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> RecopStatus) -> RecopStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(RecopStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, RecopStatus> {
    if p.is_null() {
        return Err(fail(RecopStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(RecopStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

fn from_error(e: &Error) -> RecopStatus {
    fail(RecopStatus::from(e), &e.to_string())
}

fn passed(checks: &[Check]) -> bool {
    checks.iter().filter(|c| c.required).all(|c| c.pass)
}

fn into_string(v: &Value) -> *mut c_char {
    CString::new(v.to_string()).expect("JSON has no NUL").into_raw()
}

fn triple_handle(c: TripleClassification, result: Value, checks: Vec<Check>) -> RecopTriple {
    RecopTriple {
        tag: CString::new(c.tag.name()).expect("static name"),
        permutation: c.permutation,
        signature: c.metric.as_ref().map(|m| (m.signature.positive, m.signature.negative)),
        passed: passed(&checks),
        report: json!({ "result": result, "checks": checks }),
    }
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn recop_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Classifies a `pair` document given as JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn recop_classify_pair(json: *const c_char, out: *mut *mut RecopPair) -> RecopStatus {
    guard(|| {
        if out.is_null() {
            return fail(RecopStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let doc = match parse_str(text) {
            Ok(d) => d,
            Err(e) => return from_error(&e),
        };
        if doc.mode != Mode::Pair {
            return fail(RecopStatus::Precondition, "expected a pair document");
        }
        match pair_report(&algebra_of(&doc), &doc.forms[0], &doc.forms[1]) {
            Ok((result, checks)) => {
                let tag = result["tag"].as_str().unwrap_or_default().to_string();
                let handle = RecopPair {
                    tag: CString::new(tag).expect("static name"),
                    passed: passed(&checks),
                    report: json!({ "result": result, "checks": checks }),
                };
                *out = Box::into_raw(Box::new(handle));
                RecopStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Tag of the pair; owned by the handle.
///
/// # Safety
/// `pair` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn recop_pair_tag(pair: *const RecopPair) -> *const c_char {
    pair.as_ref().map_or(ptr::null(), |p| p.tag.as_ptr())
}

/// 1 when every required check passed, 0 otherwise or for NULL.
///
/// # Safety
/// `pair` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn recop_pair_passed(pair: *const RecopPair) -> c_int {
    pair.as_ref().is_some_and(|p| p.passed) as c_int
}

/// JSON report; free with `recop_string_free`.
///
/// # Safety
/// `pair` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn recop_pair_report(pair: *const RecopPair) -> *mut c_char {
    pair.as_ref().map_or(ptr::null_mut(), |p| into_string(&p.report))
}

/// # Safety
/// `pair` must come from `recop_classify_pair` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn recop_pair_free(pair: *mut RecopPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// Classifies a `triple` document given as JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn recop_classify_triple(json: *const c_char, out: *mut *mut RecopTriple) -> RecopStatus {
    guard(|| {
        if out.is_null() {
            return fail(RecopStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_str(text).and_then(|d| triple_report(&d)) {
            Ok((c, result, checks)) => {
                *out = Box::into_raw(Box::new(triple_handle(c, result, checks)));
                RecopStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Looks up and verifies a catalog example such as `dotti-fino-8` or
/// `product(dotti-fino-8,neg(flat-hk-4))`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn recop_verify_example(name: *const c_char, out: *mut *mut RecopTriple) -> RecopStatus {
    guard(|| {
        if out.is_null() {
            return fail(RecopStatus::NullPointer, "null output pointer");
        }
        let name = match read_str(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match example_report(name) {
            Ok((c, result, checks)) => {
                *out = Box::into_raw(Box::new(triple_handle(c, result, checks)));
                RecopStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Tag of the triple; owned by the handle.
///
/// # Safety
/// `triple` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn recop_triple_tag(triple: *const RecopTriple) -> *const c_char {
    triple.as_ref().map_or(ptr::null(), |t| t.tag.as_ptr())
}

/// Writes the 1-based input index held by each canonical slot.
///
/// # Safety
/// `triple` must be a live handle and `out` point to three `size_t`.
#[no_mangle]
pub unsafe extern "C" fn recop_triple_permutation(triple: *const RecopTriple, out: *mut usize) -> RecopStatus {
    guard(|| match triple.as_ref() {
        Some(t) if !out.is_null() => {
            ptr::copy_nonoverlapping(t.permutation.as_ptr(), out, 3);
            RecopStatus::Ok
        }
        _ => fail(RecopStatus::NullPointer, "null argument"),
    })
}

/// Positive and negative index of the induced metric. `NoMetric` for tags
/// without one.
///
/// # Safety
/// `triple` must be a live handle; `positive` and `negative` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn recop_triple_signature(
    triple: *const RecopTriple,
    positive: *mut usize,
    negative: *mut usize,
) -> RecopStatus {
    guard(|| {
        let Some(t) = triple.as_ref() else {
            return fail(RecopStatus::NullPointer, "null handle");
        };
        if positive.is_null() || negative.is_null() {
            return fail(RecopStatus::NullPointer, "null output pointer");
        }
        match t.signature {
            Some((p, q)) => {
                *positive = p;
                *negative = q;
                RecopStatus::Ok
            }
            None => fail(RecopStatus::NoMetric, "this triple carries no metric"),
        }
    })
}

/// 1 when every required check passed, 0 otherwise or for NULL.
///
/// # Safety
/// `triple` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn recop_triple_passed(triple: *const RecopTriple) -> c_int {
    triple.as_ref().is_some_and(|t| t.passed) as c_int
}

/// JSON report; free with `recop_string_free`.
///
/// # Safety
/// `triple` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn recop_triple_report(triple: *const RecopTriple) -> *mut c_char {
    triple.as_ref().map_or(ptr::null_mut(), |t| into_string(&t.report))
}

/// # Safety
/// `triple` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn recop_triple_free(triple: *mut RecopTriple) {
    if !triple.is_null() {
        drop(Box::from_raw(triple));
    }
}

/// Runs a command-line invocation (without the program name) and returns
/// its JSON report and exit code. The status only reflects argument
/// marshalling; command failures are in the report.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; outputs must be valid.
#[no_mangle]
pub unsafe extern "C" fn recop_run(
    argv: *const *const c_char,
    argc: usize,
    report: *mut *mut c_char,
    exit_code: *mut c_int,
) -> RecopStatus {
    guard(|| {
        if report.is_null() || exit_code.is_null() || (argv.is_null() && argc > 0) {
            return fail(RecopStatus::NullPointer, "null argument");
        }
        let mut args = vec!["recop".to_string()];
        for i in 0..argc {
            match read_str(*argv.add(i)) {
                Ok(s) => args.push(s.to_string()),
                Err(s) => return s,
            }
        }
        let outcome = run_args(args);
        *report = CString::new(outcome.render()).expect("JSON has no NUL").into_raw();
        *exit_code = outcome.exit_code;
        RecopStatus::Ok
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn recop_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
