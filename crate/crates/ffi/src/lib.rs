//! C interface to `dualcover`.
//!
//! Objects cross the boundary as opaque handles created by `*_new`/`*_run`
//! style functions and released with the matching `*_free`. Every fallible
//! call returns a [`DcStatus`]; the message of the last failure on the
//! calling thread is available from [`dc_last_error`]. Strings returned by
//! the library are released with [`dc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dualcover::braidmono::LocalKind;
use dualcover::curvegeom::{Plane, PlaneCurve, Tolerances};
use dualcover::hurwitz::count_classes;
use dualcover::monorep::{MonodromyRep, Outcome};
use dualcover::pipeline::{Analysis, PipelineError};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DcStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// The input was rejected: malformed text or a hypothesis that fails.
    Refused = 3,
    /// The computation itself failed.
    Failed = 4,
    /// The result does not fit the output type.
    Overflow = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DcOutcome {
    NotExtendable = 0,
    ExtendsSingularTotalSpace = 1,
    EquivalentToProjection = 2,
    ExcludedCase = 3,
}

impl From<Outcome> for DcOutcome {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::NotExtendable => DcOutcome::NotExtendable,
            Outcome::ExtendsSingularTotalSpace => DcOutcome::ExtendsSingularTotalSpace,
            Outcome::EquivalentToProjection => DcOutcome::EquivalentToProjection,
            Outcome::ExcludedCase => DcOutcome::ExcludedCase,
        }
    }
}

/// Summary numbers of an analysis.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DcCounts {
    pub degree: u32,
    pub dual_degree: u32,
    pub source_nodes: u32,
    pub dual_nodes: u32,
    pub dual_cusps: u32,
    pub factors: u32,
    pub tangencies: u32,
    /// 1 when the curve is general enough, else 0.
    pub generic: u8,
}

/// A plane curve in x, y, z.
pub struct DcCurve(PlaneCurve);

/// A curve with its dual and the braid monodromy of the dual.
pub struct DcAnalysis(Analysis);

/// A cover of the line given by permutations of the fiber generators.
pub struct DcRep(MonodromyRep);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: DcStatus, msg: impl Into<String>) -> DcStatus {
    set_error(msg);
    status
}

fn pipeline_status(e: &PipelineError) -> DcStatus {
    if e.is_refusal() {
        DcStatus::Refused
    } else {
        DcStatus::Failed
    }
}

/// Run `f`, turning a panic into [`DcStatus::Panic`].
fn guard(f: impl FnOnce() -> DcStatus) -> DcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(DcStatus::Panic, msg)
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, DcStatus> {
    if s.is_null() {
        return Err(fail(DcStatus::NullArgument, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(DcStatus::InvalidUtf8, "string is not UTF-8"))
}

unsafe fn put<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> DcStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            DcStatus::Ok
        }
        Err(_) => fail(DcStatus::Failed, "string contains a NUL byte"),
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn dc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a homogeneous polynomial in x, y, z, or the contents of a curve
/// file.
///
/// # Safety
/// `source` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_curve_parse(source: *const c_char, out: *mut *mut DcCurve) -> DcStatus {
    guard(|| {
        if out.is_null() {
            return fail(DcStatus::NullArgument, "null output pointer");
        }
        let s = match text(source) {
            Ok(s) => s,
            Err(e) => return e,
        };
        match PlaneCurve::from_file_text(s) {
            Ok(c) if c.plane() == Plane::Source => {
                put(out, DcCurve(c));
                DcStatus::Ok
            }
            Ok(_) => fail(DcStatus::Refused, "expected a curve in x, y, z"),
            Err(e) => fail(DcStatus::Refused, e.to_string()),
        }
    })
}

/// # Safety
/// `c` must be null or a handle from [`dc_curve_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dc_curve_free(c: *mut DcCurve) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Degree of the curve, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live curve handle.
#[no_mangle]
pub unsafe extern "C" fn dc_curve_degree(c: *const DcCurve) -> u32 {
    c.as_ref().map_or(0, |c| c.0.degree())
}

/// Dual curve, singular points and braid monodromy of the dual, with every
/// random choice drawn from `seed`.
///
/// # Safety
/// `c` must be a live curve handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_analysis_run(c: *const DcCurve, seed: u64, out: *mut *mut DcAnalysis) -> DcStatus {
    guard(|| {
        let (Some(c), false) = (c.as_ref(), out.is_null()) else {
            return fail(DcStatus::NullArgument, "null argument");
        };
        match Analysis::run(&c.0, &Tolerances::default(), seed) {
            Ok(a) => {
                put(out, DcAnalysis(a));
                DcStatus::Ok
            }
            Err(e) => fail(pipeline_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `a` must be null or a handle from [`dc_analysis_run`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dc_analysis_free(a: *mut DcAnalysis) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` must be a live analysis handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_analysis_counts(a: *const DcAnalysis, out: *mut DcCounts) -> DcStatus {
    guard(|| {
        let (Some(a), Some(out)) = (a.as_ref(), out.as_mut()) else {
            return fail(DcStatus::NullArgument, "null argument");
        };
        let d = &a.0.data;
        let f = &a.0.factorization;
        *out = DcCounts {
            degree: d.curve.degree(),
            dual_degree: d.dual.degree(),
            source_nodes: d.source_nodes() as u32,
            dual_nodes: d.dual_nodes() as u32,
            dual_cusps: d.dual_cusps() as u32,
            factors: f.factors.len() as u32,
            tangencies: f.count(LocalKind::Tangency) as u32,
            generic: a.0.genericity.verdict as u8,
        };
        DcStatus::Ok
    })
}

/// Braid monodromy factorization as JSON; free with [`dc_string_free`].
///
/// # Safety
/// `a` must be a live analysis handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_analysis_factorization_json(a: *const DcAnalysis, out: *mut *mut c_char) -> DcStatus {
    guard(|| {
        let (Some(a), false) = (a.as_ref(), out.is_null()) else {
            return fail(DcStatus::NullArgument, "null argument");
        };
        put_string(out, a.0.factorization.to_json())
    })
}

/// The cover of the line by projection of the curve from a generic point.
///
/// # Safety
/// `a` must be a live analysis handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_analysis_projection(a: *const DcAnalysis, out: *mut *mut DcRep) -> DcStatus {
    guard(|| {
        let (Some(a), false) = (a.as_ref(), out.is_null()) else {
            return fail(DcStatus::NullArgument, "null argument");
        };
        match a.0.projection() {
            Ok(r) => {
                put(out, DcRep(r));
                DcStatus::Ok
            }
            Err(e) => fail(pipeline_status(&e), e.to_string()),
        }
    })
}

/// Read a rep file: `{"sheets": k, "generators": ["(1 2)", ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_rep_from_json(json: *const c_char, out: *mut *mut DcRep) -> DcStatus {
    guard(|| {
        if out.is_null() {
            return fail(DcStatus::NullArgument, "null output pointer");
        }
        let s = match text(json) {
            Ok(s) => s,
            Err(e) => return e,
        };
        match MonodromyRep::from_json(s) {
            Ok(r) => {
                put(out, DcRep(r));
                DcStatus::Ok
            }
            Err(e) => fail(DcStatus::Refused, e.to_string()),
        }
    })
}

/// # Safety
/// `r` must be a live rep handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_rep_to_json(r: *const DcRep, out: *mut *mut c_char) -> DcStatus {
    guard(|| {
        let (Some(r), false) = (r.as_ref(), out.is_null()) else {
            return fail(DcStatus::NullArgument, "null argument");
        };
        put_string(out, r.0.to_json())
    })
}

/// # Safety
/// `r` must be null or a rep handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dc_rep_free(r: *mut DcRep) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of sheets, or 0 for a null handle.
///
/// # Safety
/// `r` must be null or a live rep handle.
#[no_mangle]
pub unsafe extern "C" fn dc_rep_sheets(r: *const DcRep) -> usize {
    r.as_ref().map_or(0, |r| r.0.sheets())
}

/// Decide whether the cover extends over the plane and whether it is the
/// projection. `bad_points` (may be null) receives the number of bad nodes
/// and cusps.
///
/// # Safety
/// `a` and `r` must be live handles, `out` a valid pointer, `bad_points`
/// null or valid.
#[no_mangle]
pub unsafe extern "C" fn dc_verdict(
    a: *const DcAnalysis,
    r: *const DcRep,
    out: *mut DcOutcome,
    bad_points: *mut usize,
) -> DcStatus {
    guard(|| {
        let (Some(a), Some(r), Some(out)) = (a.as_ref(), r.as_ref(), out.as_mut()) else {
            return fail(DcStatus::NullArgument, "null argument");
        };
        match a.0.verdict(&r.0) {
            Ok(v) => {
                *out = v.outcome.into();
                if let Some(b) = bad_points.as_mut() {
                    *b = v.bad_points().count();
                }
                DcStatus::Ok
            }
            Err(e) => fail(pipeline_status(&e), e.to_string()),
        }
    })
}

/// Full verdict as JSON; free with [`dc_string_free`].
///
/// # Safety
/// `a` and `r` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_verdict_json(a: *const DcAnalysis, r: *const DcRep, out: *mut *mut c_char) -> DcStatus {
    guard(|| {
        let (Some(a), Some(r), false) = (a.as_ref(), r.as_ref(), out.is_null()) else {
            return fail(DcStatus::NullArgument, "null argument");
        };
        match a.0.verdict(&r.0) {
            Ok(v) => put_string(out, serde_json::to_string(&v).expect("verdict serializes")),
            Err(e) => fail(pipeline_status(&e), e.to_string()),
        }
    })
}

/// Number of connected simply branched `sheets`-sheeted covers of the line
/// with `branch_points` branch points, up to equivalence.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_count_classes(sheets: usize, branch_points: usize, out: *mut u64) -> DcStatus {
    guard(|| {
        let Some(out) = out.as_mut() else {
            return fail(DcStatus::NullArgument, "null output pointer");
        };
        match count_classes(sheets, branch_points) {
            Ok(n) => match u64::try_from(n) {
                Ok(n) => {
                    *out = n;
                    DcStatus::Ok
                }
                Err(_) => fail(DcStatus::Overflow, format!("{n} does not fit in 64 bits")),
            },
            Err(e) => fail(DcStatus::Refused, e.to_string()),
        }
    })
}
