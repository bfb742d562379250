//! C interface to the gammaspec engine.
//!
//! Every object crosses the boundary as an opaque handle that the caller
//! releases with the matching `*_free` function.  Functions return a
//! [`GsStatus`]; on failure a description is available from
//! [`gs_last_error`] until the next call on the same thread.  Panics never
//! unwind into C: they are reported as [`GsStatus::Internal`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use clap::Parser;
use gammaspec::cli::report::is_configuration_error;
use gammaspec::cli::{jobs, Cli, JobConfig, Report};
use gammaspec::dkspec::ring::FinCommRing;
use gammaspec::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GsStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Bad input: unparsable ring, arguments or diagram.
    Parse = 3,
    /// Truncation or range too small for the requested computation.
    Configuration = 4,
    /// The computation ran and a checked property failed.
    PropertyFailure = 5,
    /// A panic inside the engine; this is a bug.
    Internal = 6,
}

/// Truncation parameters of a gl₁ run.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GsConfig {
    /// bound N of the injection category
    pub bound: usize,
    /// simplicial truncation D
    pub truncation: usize,
    /// largest n with H(n⁺) built
    pub n_max: usize,
    /// highest homology degree checked, at most D − 2
    pub k_max: usize,
}

/// A parsed finite commutative ring.
pub struct GsRing {
    ring: FinCommRing,
}

/// A finished job report together with its JSON rendering.
pub struct GsReport {
    report: Report,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes were removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> GsStatus {
    match e {
        Error::Parse(_) | Error::InvalidRing(_) => GsStatus::Parse,
        e if is_configuration_error(e) => GsStatus::Configuration,
        _ => GsStatus::PropertyFailure,
    }
}

fn fail(status: GsStatus, msg: impl Into<String>) -> GsStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning panics into [`GsStatus::Internal`].
fn guarded(f: impl FnOnce() -> GsStatus) -> GsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(GsStatus::Internal, msg)
        }
    }
}

unsafe fn borrow_str<'a>(p: *const c_char) -> Result<&'a str, GsStatus> {
    if p.is_null() {
        return Err(fail(GsStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|e| fail(GsStatus::InvalidUtf8, e.to_string()))
}

fn run_args(args: Vec<String>, out: *mut *mut GsReport) -> GsStatus {
    let argv = std::iter::once("gammaspec".to_string()).chain(args);
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => return fail(GsStatus::Parse, e.to_string()),
    };
    let job = match JobConfig::from_cli(cli) {
        Ok(j) => j,
        Err(e) => return fail(status_of(&e), e.to_string()),
    };
    let report = jobs::run(&job);
    let json = CString::new(report.to_json_string()).expect("JSON has no nul bytes");
    let status = match (&report.failure, report.passed) {
        (None, true) => GsStatus::Ok,
        (Some(f), _) if report.exit_code() == 2 => fail(GsStatus::Configuration, format!("{}: {}", f.stage, f.message)),
        (Some(f), _) => fail(GsStatus::PropertyFailure, format!("{}: {}", f.stage, f.message)),
        (None, false) => fail(GsStatus::PropertyFailure, "a check failed; see the report"),
    };
    // SAFETY: callers check `out` for null before getting here.
    unsafe { *out = Box::into_raw(Box::new(GsReport { report, json })) };
    status
}

/// Default gl₁ parameters: N = 3, D = 4, n_max = 3, k_max = 1.
#[no_mangle]
pub extern "C" fn gs_config_default() -> GsConfig {
    GsConfig { bound: 3, truncation: 4, n_max: 3, k_max: 1 }
}

/// Parses a ring such as `"Z/6"`, `"F5"` or `"F2[x]/x^2"`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gs_ring_parse(text: *const c_char, out: *mut *mut GsRing) -> GsStatus {
    guarded(|| {
        if out.is_null() {
            return fail(GsStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match borrow_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match FinCommRing::parse(text) {
            Ok(ring) => {
                *out = Box::into_raw(Box::new(GsRing { ring }));
                GsStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Number of elements of the ring; 0 for a null handle.
///
/// # Safety
/// `ring` must be null or a handle from [`gs_ring_parse`].
#[no_mangle]
pub unsafe extern "C" fn gs_ring_order(ring: *const GsRing) -> usize {
    ring.as_ref().map_or(0, |r| r.ring.len())
}

/// Order of the unit group; 0 for a null handle.
///
/// # Safety
/// `ring` must be null or a handle from [`gs_ring_parse`].
#[no_mangle]
pub unsafe extern "C" fn gs_ring_unit_count(ring: *const GsRing) -> usize {
    ring.as_ref().map_or(0, |r| r.ring.units().len())
}

/// # Safety
/// `ring` must be null or a handle from [`gs_ring_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gs_ring_free(ring: *mut GsRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Runs the gl₁ pipeline on `ring`.  A report is produced whenever the
/// status is `Ok`, `Configuration` (for a failing stage) or
/// `PropertyFailure`; invalid parameters produce no report.
///
/// # Safety
/// `ring` must be a live handle, `config` null (for the defaults) or valid,
/// and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gs_gl1(ring: *const GsRing, config: *const GsConfig, out: *mut *mut GsReport) -> GsStatus {
    guarded(|| {
        if out.is_null() {
            return fail(GsStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let Some(ring) = ring.as_ref() else {
            return fail(GsStatus::NullPointer, "null ring");
        };
        let c = config.as_ref().copied().unwrap_or_else(|| gs_config_default());
        let args = [
            "gl1".to_string(),
            "--ring".into(),
            ring.ring.name().into(),
            "-N".into(),
            c.bound.to_string(),
            "-D".into(),
            c.truncation.to_string(),
            "--nmax".into(),
            c.n_max.to_string(),
            "--kmax".into(),
            c.k_max.to_string(),
        ];
        run_args(args.to_vec(), out)
    })
}

/// Runs a job given command-line style arguments without the program
/// name, e.g. `{"hocolim", "--ring", "F5"}`.  `--out` is ignored: use
/// [`gs_report_json`].
///
/// # Safety
/// `argv` must point to `argc` nul-terminated strings and `out` must be
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gs_run(argv: *const *const c_char, argc: usize, out: *mut *mut GsReport) -> GsStatus {
    guarded(|| {
        if out.is_null() || (argv.is_null() && argc > 0) {
            return fail(GsStatus::NullPointer, "null argument vector or output pointer");
        }
        *out = ptr::null_mut();
        let mut args = Vec::with_capacity(argc);
        for i in 0..argc {
            match borrow_str(*argv.add(i)) {
                Ok(s) => args.push(s.to_string()),
                Err(s) => return s,
            }
        }
        run_args(args, out)
    })
}

/// Whether every check in the report passed.
///
/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn gs_report_passed(report: *const GsReport) -> bool {
    report.as_ref().is_some_and(|r| r.report.passed)
}

/// The exit code the command line would use: 0, 1 or 2; −1 for null.
///
/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn gs_report_exit_code(report: *const GsReport) -> i32 {
    report.as_ref().map_or(-1, |r| r.report.exit_code())
}

/// The report as JSON.  The string is owned by the report and lives until
/// [`gs_report_free`].
///
/// # Safety
/// `report` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn gs_report_json(report: *const GsReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// # Safety
/// `report` must be null or a report handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gs_report_free(report: *mut GsReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Message describing the last failure on this thread, or null.  Valid
/// until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn gs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn gs_status_name(status: GsStatus) -> *const c_char {
    let s: &'static CStr = match status {
        GsStatus::Ok => c"ok",
        GsStatus::NullPointer => c"null pointer",
        GsStatus::InvalidUtf8 => c"invalid UTF-8",
        GsStatus::Parse => c"parse error",
        GsStatus::Configuration => c"configuration error",
        GsStatus::PropertyFailure => c"property failure",
        GsStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn last_error() -> String {
        unsafe { CStr::from_ptr(gs_last_error()) }.to_string_lossy().into_owned()
    }

    #[test]
    fn ring_round_trip() {
        let mut r = ptr::null_mut();
        unsafe {
            assert_eq!(gs_ring_parse(c"Z/6".as_ptr(), &mut r), GsStatus::Ok);
            assert_eq!(gs_ring_order(r), 6);
            assert_eq!(gs_ring_unit_count(r), 2);
            gs_ring_free(r);
        }
    }

    #[test]
    fn bad_ring_sets_the_last_error() {
        let mut r = ptr::null_mut();
        let s = unsafe { gs_ring_parse(c"Z/".as_ptr(), &mut r) };
        assert_eq!(s, GsStatus::Parse);
        assert!(r.is_null());
        assert!(!last_error().is_empty());
    }

    #[test]
    fn null_arguments_are_rejected() {
        unsafe {
            assert_eq!(gs_ring_parse(ptr::null(), &mut ptr::null_mut()), GsStatus::NullPointer);
            assert_eq!(gs_ring_parse(c"F5".as_ptr(), ptr::null_mut()), GsStatus::NullPointer);
            assert_eq!(gs_gl1(ptr::null(), ptr::null(), &mut ptr::null_mut()), GsStatus::NullPointer);
            assert_eq!(gs_report_exit_code(ptr::null()), -1);
            assert!(gs_report_json(ptr::null()).is_null());
        }
    }

    #[test]
    fn status_names_are_distinct() {
        let all = [
            GsStatus::Ok,
            GsStatus::NullPointer,
            GsStatus::InvalidUtf8,
            GsStatus::Parse,
            GsStatus::Configuration,
            GsStatus::PropertyFailure,
            GsStatus::Internal,
        ];
        let mut names: Vec<_> = all.iter().map(|s| unsafe { CStr::from_ptr(gs_status_name(*s)) }).collect();
        names.dedup();
        assert_eq!(names.len(), all.len());
    }
}
