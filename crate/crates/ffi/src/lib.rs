//! C ABI over `qmean`.
//!
//! Oracles are opaque heap handles created by `qm_oracle_*` and released with
//! [`qm_oracle_free`]. Every fallible call returns a [`QmStatus`]; on failure
//! [`qm_last_error_message`] describes the error for the calling thread.
//! Panics never cross the boundary and are reported as `QM_STATUS_PANIC`.
//!
//! The header `include/qmean.h` is generated by the build script.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use qmean::estimators::{EstimatorSettings, EstimatorSpec, Readout};
use qmean::harness::{emit_csv, run_sweep, SweepConfig};
use qmean::oracle::{true_mean, GridDomain, IntegrandOracle, IntegrandSpec};
use qmean::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Capacity = 3,
    Domain = 4,
    Range = 5,
    Inconsistent = 6,
    Config = 7,
    Io = 8,
    Fit = 9,
    Panic = 10,
}

impl From<&Error> for QmStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Capacity { .. } => QmStatus::Capacity,
            Error::Domain(_) => QmStatus::Domain,
            Error::Range { .. } => QmStatus::Range,
            Error::Inconsistent { .. } => QmStatus::Inconsistent,
            Error::Fit(_) => QmStatus::Fit,
            Error::Config(_) => QmStatus::Config,
            Error::Io { .. } | Error::Csv { .. } => QmStatus::Io,
        }
    }
}

/// Opaque integrand oracle.
pub struct QmOracle {
    inner: IntegrandOracle,
}

/// Estimator output.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QmEstimate {
    pub value: f64,
    pub target_accuracy: f64,
    pub oracle_queries: u64,
    pub shots: u64,
    pub seed: u64,
    /// Solution count for counting estimators, otherwise 0.
    pub count: u64,
    pub has_count: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(QmStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(QmStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(QmStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QmStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QmStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside qmean");
            QmStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(QmStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn qm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Oracle over a `dims`-dimensional grid with `points_per_axis` points per
/// axis, from `len = points_per_axis^dims` values in `[0, 1]` (axis 0 varies
/// fastest).
///
/// # Safety
/// `values` must point to `len` readable doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qm_oracle_from_values(
    dims: u32,
    points_per_axis: usize,
    values: *const f64,
    len: usize,
    out: *mut *mut QmOracle,
) -> QmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if values.is_null() {
            return Err(null("values"));
        }
        let domain = GridDomain::new(dims, points_per_axis)?;
        if domain.size() != len as u64 {
            return Err(Failure(
                QmStatus::InvalidArgument,
                format!("grid {domain} has {} points, got {len} values", domain.size()),
            ));
        }
        let values = std::slice::from_raw_parts(values, len).to_vec();
        let inner = IntegrandOracle::from_values(domain, values)?;
        *out = Box::into_raw(Box::new(QmOracle { inner }));
        Ok(())
    })
}

/// Oracle for a named built-in integrand such as `"linear@1x16"` or `"walk:6:2"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qm_oracle_builtin(spec: *const c_char, out: *mut *mut QmOracle) -> QmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let spec: IntegrandSpec = str_arg(spec, "spec")?.parse()?;
        *out = Box::into_raw(Box::new(QmOracle { inner: spec.build()? }));
        Ok(())
    })
}

/// Release an oracle. NULL is ignored.
///
/// # Safety
/// `oracle` must come from `qm_oracle_*` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qm_oracle_free(oracle: *mut QmOracle) {
    if !oracle.is_null() {
        drop(Box::from_raw(oracle));
    }
}

/// Exact grid mean. Charges one query per grid point.
///
/// # Safety
/// `oracle` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qm_oracle_true_mean(oracle: *const QmOracle, out: *mut f64) -> QmStatus {
    guard(|| {
        let oracle = oracle.as_ref().ok_or_else(|| null("oracle"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = true_mean(&oracle.inner)?;
        Ok(())
    })
}

/// Queries charged to this oracle so far. Returns 0 for NULL.
///
/// # Safety
/// `oracle` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn qm_oracle_queries(oracle: *const QmOracle) -> u64 {
    oracle.as_ref().map_or(0, |o| o.inner.queries())
}

/// Run the estimator named by `tag` (for example `"qm_iterated"` or
/// `"qc_fft(64,256,5)"`) at target accuracy `eps`.
///
/// # Safety
/// `oracle` must be a live handle, `tag` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qm_estimate(
    oracle: *const QmOracle,
    tag: *const c_char,
    eps: f64,
    seed: u64,
    exact_readout: bool,
    out: *mut QmEstimate,
) -> QmStatus {
    guard(|| {
        let oracle = oracle.as_ref().ok_or_else(|| null("oracle"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let spec: EstimatorSpec = str_arg(tag, "tag")?.parse()?;
        let settings = EstimatorSettings {
            readout: if exact_readout { Readout::Exact } else { Readout::Sampled },
            ..EstimatorSettings::default()
        };
        let e = spec.run(&oracle.inner, eps, seed, &settings)?;
        *out = QmEstimate {
            value: e.value,
            target_accuracy: e.target_accuracy,
            oracle_queries: e.oracle_queries,
            shots: e.shots,
            seed: e.seed,
            count: e.count.unwrap_or(0),
            has_count: e.count.is_some(),
        };
        Ok(())
    })
}

/// Run a sweep config file and write its CSV to `out_path`, or to the
/// config's `output` when `out_path` is NULL. Cell failures do not fail the
/// call; their number is written to `failed_cells` when non-NULL.
///
/// # Safety
/// String arguments must be NUL-terminated; count pointers writable or NULL.
#[no_mangle]
pub unsafe extern "C" fn qm_sweep_from_file(
    config_path: *const c_char,
    out_path: *const c_char,
    records: *mut usize,
    failed_cells: *mut usize,
) -> QmStatus {
    guard(|| {
        let config = SweepConfig::load(&PathBuf::from(str_arg(config_path, "config_path")?))?;
        let out = if out_path.is_null() {
            config
                .output
                .clone()
                .ok_or_else(|| Failure(QmStatus::Config, "no output path".into()))?
        } else {
            PathBuf::from(str_arg(out_path, "out_path")?)
        };
        let outcome = run_sweep(&config)?;
        emit_csv(&outcome.records, &out)?;
        if !records.is_null() {
            *records = outcome.records.len();
        }
        if !failed_cells.is_null() {
            *failed_cells = outcome.failures.len();
        }
        Ok(())
    })
}
