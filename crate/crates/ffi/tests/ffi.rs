use std::ffi::{CStr, CString};
use std::ptr;

use qmean_ffi::*;

fn last_error() -> String {
    let p = qm_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn ramp() -> *mut QmOracle {
    let values = [0.0, 0.25, 0.5, 0.75];
    let mut o = ptr::null_mut();
    let s = unsafe { qm_oracle_from_values(1, 4, values.as_ptr(), values.len(), &mut o) };
    assert_eq!(s, QmStatus::Ok);
    o
}

#[test]
fn oracle_lifecycle_and_estimates() {
    let o = ramp();
    let mut mean = 0.0;
    assert_eq!(unsafe { qm_oracle_true_mean(o, &mut mean) }, QmStatus::Ok);
    assert_eq!(mean, 0.375);
    assert_eq!(unsafe { qm_oracle_queries(o) }, 4);

    let tag = CString::new("qm_sampling").unwrap();
    let mut e = QmEstimate {
        value: 0.0,
        target_accuracy: 0.0,
        oracle_queries: 0,
        shots: 0,
        seed: 0,
        count: 0,
        has_count: false,
    };
    assert_eq!(unsafe { qm_estimate(o, tag.as_ptr(), 0.1, 3, true, &mut e) }, QmStatus::Ok);
    assert!((e.value - 0.375).abs() < 1e-10);
    assert_eq!(e.oracle_queries, 1600);
    assert!(!e.has_count);
    assert_eq!(unsafe { qm_oracle_queries(o) }, 4 + 1600);

    let tag = CString::new("qc_fft(4,128,5)").unwrap();
    assert_eq!(unsafe { qm_estimate(o, tag.as_ptr(), 0.1, 3, true, &mut e) }, QmStatus::Ok);
    assert!(e.has_count);
    assert_eq!(e.count, 6);
    unsafe { qm_oracle_free(o) };
}

#[test]
fn builtin_oracle() {
    let spec = CString::new("walk:6:2").unwrap();
    let mut o = ptr::null_mut();
    assert_eq!(unsafe { qm_oracle_builtin(spec.as_ptr(), &mut o) }, QmStatus::Ok);
    let mut mean = 0.0;
    unsafe { qm_oracle_true_mean(o, &mut mean) };
    assert!((mean - 42.0 / 144.0).abs() < 1e-12);
    unsafe { qm_oracle_free(o) };
}

#[test]
fn status_codes_and_messages() {
    let mut o = ptr::null_mut();
    let values = [0.5, 1.5];
    assert_eq!(
        unsafe { qm_oracle_from_values(1, 2, values.as_ptr(), 2, &mut o) },
        QmStatus::Range
    );
    assert!(last_error().contains("outside [0, 1]"));
    assert!(o.is_null());

    assert_eq!(
        unsafe { qm_oracle_from_values(1, 4, values.as_ptr(), 2, &mut o) },
        QmStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { qm_oracle_from_values(1, 2, ptr::null(), 2, &mut o) },
        QmStatus::NullPointer
    );

    let o = ramp();
    assert!(qm_last_error_message().is_null());
    let mut e = std::mem::MaybeUninit::<QmEstimate>::uninit();
    let bad = CString::new("qm_magic").unwrap();
    assert_eq!(
        unsafe { qm_estimate(o, bad.as_ptr(), 0.1, 0, false, e.as_mut_ptr()) },
        QmStatus::Config
    );
    let big = CString::new("qm_fft(1073741824,1)").unwrap();
    assert_eq!(
        unsafe { qm_estimate(o, big.as_ptr(), 0.1, 0, false, e.as_mut_ptr()) },
        QmStatus::Capacity
    );
    let ok = CString::new("qm_fft").unwrap();
    assert_eq!(
        unsafe { qm_estimate(o, ok.as_ptr(), 0.9, 0, false, e.as_mut_ptr()) },
        QmStatus::Domain
    );
    assert_eq!(
        unsafe { qm_estimate(ptr::null(), ok.as_ptr(), 0.1, 0, false, e.as_mut_ptr()) },
        QmStatus::NullPointer
    );
    unsafe { qm_oracle_free(o) };
    unsafe { qm_oracle_free(ptr::null_mut()) };
}

#[test]
fn sweep_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("s.ini");
    std::fs::write(
        &config,
        "[sweep]\nintegrands = linear@1x16\nestimators = classical_exact, qm_fft\nepsilons = 0.1\nseeds = 0..2\n",
    )
    .unwrap();
    let cfg = CString::new(config.to_str().unwrap()).unwrap();
    let out = CString::new(dir.path().join("o.csv").to_str().unwrap()).unwrap();
    let (mut records, mut failed) = (0usize, 9usize);
    assert_eq!(
        unsafe { qm_sweep_from_file(cfg.as_ptr(), out.as_ptr(), &mut records, &mut failed) },
        QmStatus::Ok
    );
    assert_eq!((records, failed), (4, 0));
    assert_eq!(std::fs::read_to_string(dir.path().join("o.csv")).unwrap().lines().count(), 5);

    // no output anywhere
    assert_eq!(
        unsafe { qm_sweep_from_file(cfg.as_ptr(), ptr::null(), ptr::null_mut(), ptr::null_mut()) },
        QmStatus::Config
    );
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(qm_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
