//! C ABI for steinerlab.
//!
//! Complexes, maps and check reports cross the boundary as opaque handles that
//! the caller frees with the matching `sl_*_free`. Every fallible function
//! returns an [`SlStatus`]; on failure `sl_last_error` describes the error for
//! the calling thread. Strings returned to the caller are freed with
//! `sl_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use steinerlab::io::{emit_complex, emit_map, parse_complex, parse_map};
use steinerlab::ops::{antijoin, antisuspension, dual, gray_tensor, join, suspension, Duality};
use steinerlab::retraction::{section_ell, section_q_cube, section_xi, zeta_theta_pair, RetractionPair};
use steinerlab::{compose, is_steiner, shapes, validate_complex, validate_map, AdcError, BasedComplex, CheckReport};
use steinerlab::{ComplexMap, Status};

/// Result codes. `Ok` is zero; library errors keep their names.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Panic = 3,
    InvalidArgument = 4,
    Malformed = 10,
    DegreeMismatch = 11,
    SourceTargetMismatch = 12,
    SourceMismatch = 13,
    NonBasedPushout = 14,
    BadDims = 15,
    BadBasepoint = 16,
    Empty = 17,
    DegreeZero = 18,
    NegativeEntry = 19,
    BadLevel = 20,
    NotComposable = 21,
    InvalidResult = 22,
    UnsupportedSpec = 23,
    ParseError = 24,
    ValidationError = 25,
    TooLarge = 26,
}

impl SlStatus {
    fn of(e: &AdcError) -> SlStatus {
        match e.code() {
            "MALFORMED" => SlStatus::Malformed,
            "DEGREE_MISMATCH" => SlStatus::DegreeMismatch,
            "SOURCE_TARGET_MISMATCH" => SlStatus::SourceTargetMismatch,
            "SOURCE_MISMATCH" => SlStatus::SourceMismatch,
            "NON_BASED_PUSHOUT" => SlStatus::NonBasedPushout,
            "BAD_DIMS" => SlStatus::BadDims,
            "BAD_BASEPOINT" => SlStatus::BadBasepoint,
            "EMPTY" => SlStatus::Empty,
            "DEGREE_ZERO" => SlStatus::DegreeZero,
            "NEGATIVE_ENTRY" => SlStatus::NegativeEntry,
            "BAD_LEVEL" => SlStatus::BadLevel,
            "NOT_COMPOSABLE" => SlStatus::NotComposable,
            "INVALID_RESULT" => SlStatus::InvalidResult,
            "UNSUPPORTED_SPEC" => SlStatus::UnsupportedSpec,
            "PARSE_ERROR" => SlStatus::ParseError,
            "VALIDATION_ERROR" => SlStatus::ValidationError,
            "TOO_LARGE" => SlStatus::TooLarge,
            _ => SlStatus::InvalidArgument,
        }
    }
}

/// Shape families for [`sl_complex_shape`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlShape {
    Unit = 0,
    Interval = 1,
    Disk = 2,
    BoundaryDisk = 3,
    Cube = 4,
    Oriental = 5,
    Antioriental = 6,
}

/// Binary operations for [`sl_complex_binary`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlBinaryOp {
    Tensor = 0,
    Join = 1,
    Antijoin = 2,
}

/// Unary operations for [`sl_complex_unary`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlUnaryOp {
    Suspension = 0,
    Antisuspension = 1,
    Op = 2,
    Co = 3,
    Coop = 4,
}

/// Retraction families for [`sl_retraction`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlRetraction {
    /// Oriental onto the cube, parameter `n`.
    Xi = 0,
    /// Cube onto the oriental by the quotient, parameter `n`.
    QCube = 1,
    /// Oriental onto the suspended oriental, parameter `n`.
    Ell = 2,
    /// Wedge of orientals into an oriental, parameters `n` and `m`.
    Zeta = 3,
}

/// Opaque based complex.
pub struct SlComplex(Arc<BasedComplex>);

/// Opaque chain map.
pub struct SlMap(ComplexMap);

/// Opaque list of named checks.
pub struct SlReport(CheckReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

type Ffi<T> = std::result::Result<T, SlStatus>;

fn fail(status: SlStatus, msg: impl Into<String>) -> SlStatus {
    set_error(msg.into());
    status
}

fn lib<T>(r: steinerlab::Result<T>) -> Ffi<T> {
    r.map_err(|e| fail(SlStatus::of(&e), format!("{}: {e}", e.code())))
}

/// Runs `f`, catching panics, and writes its value through `out`.
fn guard<T>(out: *mut *mut T, f: impl FnOnce() -> Ffi<T>) -> SlStatus {
    if out.is_null() {
        return fail(SlStatus::NullPointer, "output pointer is null");
    }
    unsafe { *out = ptr::null_mut() };
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            unsafe { *out = Box::into_raw(Box::new(v)) };
            SlStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => fail(SlStatus::Panic, "internal panic"),
    }
}

fn guard_value<T: Copy>(out: *mut T, f: impl FnOnce() -> Ffi<T>) -> SlStatus {
    if out.is_null() {
        return fail(SlStatus::NullPointer, "output pointer is null");
    }
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            unsafe { *out = v };
            SlStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => fail(SlStatus::Panic, "internal panic"),
    }
}

fn borrow<'a, T>(p: *const T) -> Ffi<&'a T> {
    unsafe { p.as_ref() }.ok_or_else(|| fail(SlStatus::NullPointer, "handle is null"))
}

fn text<'a>(p: *const c_char) -> Ffi<&'a str> {
    if p.is_null() {
        return Err(fail(SlStatus::NullPointer, "string is null"));
    }
    unsafe { CStr::from_ptr(p) }.to_str().map_err(|e| fail(SlStatus::InvalidUtf8, e.to_string()))
}

fn string_out(out: *mut *mut c_char, f: impl FnOnce() -> Ffi<String>) -> SlStatus {
    if out.is_null() {
        return fail(SlStatus::NullPointer, "output pointer is null");
    }
    unsafe { *out = ptr::null_mut() };
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => match CString::new(s) {
            Ok(c) => {
                unsafe { *out = c.into_raw() };
                SlStatus::Ok
            }
            Err(e) => fail(SlStatus::InvalidUtf8, e.to_string()),
        },
        Ok(Err(s)) => s,
        Err(_) => fail(SlStatus::Panic, "internal panic"),
    }
}

/// Message for the last failure on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn sl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by the library.
///
/// # Safety
/// `s` must be null or a pointer returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn sl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a library shape. `n` is ignored for the unit and the interval.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_complex_shape(shape: SlShape, n: usize, out: *mut *mut SlComplex) -> SlStatus {
    guard(out, || {
        let c = match shape {
            SlShape::Unit => shapes::unit(),
            SlShape::Interval => shapes::interval(),
            SlShape::Disk => lib(shapes::disk(n))?,
            SlShape::BoundaryDisk => lib(shapes::boundary_disk(n))?,
            SlShape::Cube => lib(shapes::cube(n))?,
            SlShape::Oriental => lib(shapes::oriental(n))?,
            SlShape::Antioriental => lib(shapes::antioriental(n))?,
        };
        Ok(SlComplex(c))
    })
}

/// # Safety
/// `a` and `b` must be valid handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_complex_binary(
    op: SlBinaryOp,
    a: *const SlComplex,
    b: *const SlComplex,
    out: *mut *mut SlComplex,
) -> SlStatus {
    guard(out, || {
        let (a, b) = (&borrow(a)?.0, &borrow(b)?.0);
        let c = match op {
            SlBinaryOp::Tensor => gray_tensor(a, b),
            SlBinaryOp::Join => join(a, b),
            SlBinaryOp::Antijoin => antijoin(a, b),
        };
        Ok(SlComplex(lib(c)?))
    })
}

/// # Safety
/// `a` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_complex_unary(op: SlUnaryOp, a: *const SlComplex, out: *mut *mut SlComplex) -> SlStatus {
    guard(out, || {
        let a = &borrow(a)?.0;
        let c = match op {
            SlUnaryOp::Suspension => lib(suspension(a))?,
            SlUnaryOp::Antisuspension => lib(antisuspension(a))?,
            SlUnaryOp::Op => dual(a, Duality::Op),
            SlUnaryOp::Co => dual(a, Duality::Co),
            SlUnaryOp::Coop => dual(a, Duality::Coop),
        };
        Ok(SlComplex(c))
    })
}

/// Parses and validates a complex document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_complex_parse_json(json: *const c_char, out: *mut *mut SlComplex) -> SlStatus {
    guard(out, || Ok(SlComplex(lib(parse_complex(text(json)?))?)))
}

/// # Safety
/// `c` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_complex_emit_json(c: *const SlComplex, out: *mut *mut c_char) -> SlStatus {
    string_out(out, || Ok(emit_complex(&borrow(c)?.0)))
}

/// Number of generators in `degree`.
///
/// # Safety
/// `c` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_complex_count(c: *const SlComplex, degree: usize, out: *mut usize) -> SlStatus {
    guard_value(out, || Ok(borrow(c)?.0.generators(degree).len()))
}

/// Highest degree with a generator, or -1 for the zero complex.
///
/// # Safety
/// `c` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_complex_top_degree(c: *const SlComplex, out: *mut i64) -> SlStatus {
    guard_value(out, || Ok(borrow(c)?.0.top_degree().map_or(-1, |t| t as i64)))
}

/// # Safety
/// `c` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_complex_validate(c: *const SlComplex, out: *mut *mut SlReport) -> SlStatus {
    guard(out, || Ok(SlReport(validate_complex(&borrow(c)?.0))))
}

/// Steiner checks: the complex axioms plus unitality and loop-freeness.
///
/// # Safety
/// `c` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_complex_is_steiner(c: *const SlComplex, out: *mut *mut SlReport) -> SlStatus {
    guard(out, || Ok(SlReport(is_steiner(&borrow(c)?.0))))
}

/// # Safety
/// `c` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn sl_complex_free(c: *mut SlComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Builds the embedding and retraction of a family. `m` is used by `Zeta` only.
///
/// # Safety
/// `embed` and `retract` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sl_retraction(
    which: SlRetraction,
    n: usize,
    m: usize,
    embed: *mut *mut SlMap,
    retract: *mut *mut SlMap,
) -> SlStatus {
    if retract.is_null() {
        return fail(SlStatus::NullPointer, "output pointer is null");
    }
    *retract = ptr::null_mut();
    let mut second = None;
    let status = guard(embed, || {
        let pair: RetractionPair = lib(match which {
            SlRetraction::Xi => section_xi(n),
            SlRetraction::QCube => section_q_cube(n),
            SlRetraction::Ell => section_ell(n),
            SlRetraction::Zeta => zeta_theta_pair(n, m),
        })?;
        second = Some(SlMap(pair.retract));
        Ok(SlMap(pair.embed))
    });
    if let Some(r) = second {
        *retract = Box::into_raw(Box::new(r));
    }
    status
}

/// Checks both maps, that retract ∘ embed is the identity and that
/// embed ∘ retract is idempotent.
///
/// # Safety
/// `which` parameters as in [`sl_retraction`]; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_retraction_verify(
    which: SlRetraction,
    n: usize,
    m: usize,
    out: *mut *mut SlReport,
) -> SlStatus {
    guard(out, || {
        let pair = lib(match which {
            SlRetraction::Xi => section_xi(n),
            SlRetraction::QCube => section_q_cube(n),
            SlRetraction::Ell => section_ell(n),
            SlRetraction::Zeta => zeta_theta_pair(n, m),
        })?;
        Ok(SlReport(lib(pair.verify())?))
    })
}

/// The composite `g ∘ f`.
///
/// # Safety
/// `f` and `g` must be valid handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_map_compose(f: *const SlMap, g: *const SlMap, out: *mut *mut SlMap) -> SlStatus {
    guard(out, || Ok(SlMap(lib(compose(&borrow(f)?.0, &borrow(g)?.0))?)))
}

/// # Safety
/// `f` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_map_source(f: *const SlMap, out: *mut *mut SlComplex) -> SlStatus {
    guard(out, || Ok(SlComplex(borrow(f)?.0.source().clone())))
}

/// # Safety
/// `f` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_map_target(f: *const SlMap, out: *mut *mut SlComplex) -> SlStatus {
    guard(out, || Ok(SlComplex(borrow(f)?.0.target().clone())))
}

/// # Safety
/// `f` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_map_validate(f: *const SlMap, out: *mut *mut SlReport) -> SlStatus {
    guard(out, || Ok(SlReport(validate_map(&borrow(f)?.0))))
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_map_parse_json(json: *const c_char, out: *mut *mut SlMap) -> SlStatus {
    guard(out, || Ok(SlMap(lib(parse_map(text(json)?))?)))
}

/// # Safety
/// `f` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_map_emit_json(f: *const SlMap, out: *mut *mut c_char) -> SlStatus {
    string_out(out, || Ok(emit_map(&borrow(f)?.0)))
}

/// # Safety
/// `f` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn sl_map_free(f: *mut SlMap) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// 1 if every check passed, 0 otherwise; 0 for a null handle.
///
/// # Safety
/// `r` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn sl_report_passed(r: *const SlReport) -> i32 {
    r.as_ref().map_or(0, |r| r.0.passed as i32)
}

/// # Safety
/// `r` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn sl_report_len(r: *const SlReport) -> usize {
    r.as_ref().map_or(0, |r| r.0.checks.len())
}

/// Name of check `i`; 1 in `passed` if it passed.
///
/// # Safety
/// `r` must be a valid handle; `name` and `passed` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sl_report_check(
    r: *const SlReport,
    i: usize,
    name: *mut *mut c_char,
    passed: *mut i32,
) -> SlStatus {
    if passed.is_null() {
        return fail(SlStatus::NullPointer, "output pointer is null");
    }
    let mut ok = 0;
    let status = string_out(name, || {
        let c = borrow(r)?
            .0
            .checks
            .get(i)
            .ok_or_else(|| fail(SlStatus::InvalidArgument, format!("check index {i} out of range")))?;
        ok = (c.status == Status::Pass) as i32;
        Ok(c.name.clone())
    });
    *passed = ok;
    status
}

/// The report rendered as text, one line per check.
///
/// # Safety
/// `r` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_report_text(r: *const SlReport, out: *mut *mut c_char) -> SlStatus {
    string_out(out, || Ok(borrow(r)?.0.to_string()))
}

/// # Safety
/// `r` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn sl_report_free(r: *mut SlReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
