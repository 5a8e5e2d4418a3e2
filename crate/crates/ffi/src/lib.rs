//! C ABI over the quiverhh engine.
//!
//! Every fallible call returns a [`QhhStatus`] whose numeric values match
//! the exit codes of the `quiverhh` command line tool. On failure the
//! message is available from [`qhh_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use quiverhh::checks::{run_checks, CheckOptions, Scope};
use quiverhh::error::EngineError;
use quiverhh::field::field_parse;
use quiverhh::hochschild::DEFAULT_NMAX;
use quiverhh::report::{run_report, ReportDocument, ReportRequest, Source};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QhhStatus {
    Ok = 0,
    /// Bad argument, unknown family, malformed DSL, scalar or tensor.
    Parse = 2,
    NonConfluent = 3,
    InfiniteDimensional = 4,
    /// Engine self-check failed (including a caught panic).
    Consistency = 5,
}

impl From<&EngineError> for QhhStatus {
    fn from(e: &EngineError) -> Self {
        match e.exit_code() {
            2 => QhhStatus::Parse,
            3 => QhhStatus::NonConfluent,
            4 => QhhStatus::InfiniteDimensional,
            _ => QhhStatus::Consistency,
        }
    }
}

/// Computed report; create with `qhh_report_family` or `qhh_report_dsl`,
/// release with `qhh_report_free`.
pub struct QhhReport {
    doc: ReportDocument,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(e: &EngineError) -> QhhStatus {
    set_error(&e.to_string());
    e.into()
}

/// Borrowed string argument; null means absent.
unsafe fn opt_str<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, EngineError> {
    if p.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(p)
        .to_str()
        .map(Some)
        .map_err(|_| EngineError::Parse(format!("{what} is not valid UTF-8")))
}

fn guarded(f: impl FnOnce() -> Result<QhhStatus, EngineError>) -> QhhStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(e)) => fail(&e),
        Err(_) => {
            set_error("internal panic");
            QhhStatus::Consistency
        }
    }
}

unsafe fn finish(req: ReportRequest, out: *mut *mut QhhReport) -> Result<QhhStatus, EngineError> {
    let doc = run_report(&req)?;
    let json = CString::new(doc.to_json()).expect("JSON has no nul bytes");
    *out = Box::into_raw(Box::new(QhhReport { doc, json }));
    Ok(QhhStatus::Ok)
}

/// Report for a built-in family (`torus-s`, `torus-c`, `p1p1`, `pi`,
/// `kronecker`). `field`, `q` and `psi` may be null. On success `*out`
/// receives a new handle.
///
/// # Safety
/// String arguments must be null or valid nul-terminated strings; `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qhh_report_family(
    family: *const c_char,
    field: *const c_char,
    q: *const c_char,
    psi: *const c_char,
    out: *mut *mut QhhReport,
) -> QhhStatus {
    guarded(|| {
        if out.is_null() {
            return Err(EngineError::Parse("out is null".into()));
        }
        *out = ptr::null_mut();
        let name = opt_str(family, "family")?.ok_or_else(|| EngineError::Parse("family is null".into()))?;
        let field = opt_str(field, "field")?.map(field_parse).transpose()?;
        let req = ReportRequest {
            source: Source::Family(name.parse()?),
            field,
            q: opt_str(q, "q")?.map(str::to_string),
            psi: opt_str(psi, "psi")?.map(str::to_string),
            nmax: DEFAULT_NMAX,
            seed: None,
        };
        finish(req, out)
    })
}

/// Report for a presentation given as DSL text.
///
/// # Safety
/// As for [`qhh_report_family`].
#[no_mangle]
pub unsafe extern "C" fn qhh_report_dsl(text: *const c_char, out: *mut *mut QhhReport) -> QhhStatus {
    guarded(|| {
        if out.is_null() {
            return Err(EngineError::Parse("out is null".into()));
        }
        *out = ptr::null_mut();
        let text = opt_str(text, "text")?.ok_or_else(|| EngineError::Parse("text is null".into()))?;
        let req = ReportRequest {
            source: Source::Dsl {
                name: "<dsl>".into(),
                text: text.to_string(),
            },
            field: None,
            q: None,
            psi: None,
            nmax: DEFAULT_NMAX,
            seed: None,
        };
        finish(req, out)
    })
}

/// The report as JSON; valid until the handle is freed.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qhh_report_json(report: *const QhhReport) -> *const c_char {
    match report.as_ref() {
        Some(r) => r.json.as_ptr(),
        None => ptr::null(),
    }
}

/// Number of computed HH degrees (`nmax + 1`), 0 for null.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qhh_report_hh_len(report: *const QhhReport) -> usize {
    report.as_ref().map_or(0, |r| r.doc.hh.len())
}

/// `dim HH^degree`, or -1 when out of range or null.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qhh_report_hh(report: *const QhhReport, degree: usize) -> i64 {
    report
        .as_ref()
        .and_then(|r| r.doc.hh.get(degree))
        .map_or(-1, |&d| d as i64)
}

/// Rank of the cup product `HH^1 ⊗ HH^1 -> HH^2`, or -1 if not computed.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qhh_report_cup_rank(report: *const QhhReport) -> i64 {
    report
        .as_ref()
        .and_then(|r| r.doc.cup.as_ref())
        .map_or(-1, |c| c.rank as i64)
}

/// Rank of the bracket on `HH^1`, or -1 if not computed.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qhh_report_bracket_rank(report: *const QhhReport) -> i64 {
    report
        .as_ref()
        .and_then(|r| r.doc.bracket.as_ref())
        .map_or(-1, |b| b.hh1_bracket_rank as i64)
}

/// # Safety
/// `report` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn qhh_report_free(report: *mut QhhReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Runs the invariant suites (`full` nonzero for the full scope).
/// Returns `QHH_STATUS_CONSISTENCY` if any check fails; the failing check
/// names are then in [`qhh_last_error`].
#[no_mangle]
pub extern "C" fn qhh_run_checks(full: i32, seed: u64) -> QhhStatus {
    guarded(|| {
        let mut opts = CheckOptions::new(if full != 0 { Scope::Full } else { Scope::Fast });
        opts.seed = seed;
        let summary = run_checks(opts);
        quiverhh::checks::checks_result(&summary)?;
        Ok(QhhStatus::Ok)
    })
}

/// Message of the last failed call on this thread, or null. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn qhh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Engine version, a static string.
#[no_mangle]
pub extern "C" fn qhh_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(c) => c,
        Err(_) => panic!("version literal"),
    };
    VERSION.as_ptr()
}
