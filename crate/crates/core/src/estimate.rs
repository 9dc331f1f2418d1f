use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Which algorithm produced an [`Estimate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    ClassicalExact,
    ClassicalMc,
    /// `W⁻¹RW` preparation, repeated measurement of `|1⟩|0…0⟩`.
    QmSampling,
    /// `W⁻¹RW` with shifted rotations and growing amplification.
    QmIterated,
    /// `W⁻¹RW` with a Fourier readout of the Grover rotation.
    QmGroverFft,
    /// `W` over the boolean domain, repeated measurement.
    QcSampling,
    /// Quantum counting.
    QcFft,
    /// `R̂W`, repeated measurement of the ancilla.
    SqrtSampling,
    /// `R̂W` with a Fourier readout.
    SqrtFft,
}

impl Method {
    pub const ALL: [Method; 9] = [
        Method::ClassicalExact,
        Method::ClassicalMc,
        Method::QmSampling,
        Method::QmIterated,
        Method::QmGroverFft,
        Method::QcSampling,
        Method::QcFft,
        Method::SqrtSampling,
        Method::SqrtFft,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Method::ClassicalExact => "classical_exact",
            Method::ClassicalMc => "classical_mc",
            Method::QmSampling => "qm_sampling",
            Method::QmIterated => "qm_iterated",
            Method::QmGroverFft => "qm_fft",
            Method::QcSampling => "qc_sampling",
            Method::QcFft => "qc_fft",
            Method::SqrtSampling => "sqrt_sampling",
            Method::SqrtFft => "sqrt_fft",
        }
    }

    /// Expected exponent `k` in a query cost of `O(1/ε^k)`; `None` for the
    /// exhaustive baseline whose cost is fixed at `M^d`.
    pub fn complexity_exponent(self) -> Option<u32> {
        match self {
            Method::ClassicalExact => None,
            Method::QmIterated | Method::QmGroverFft | Method::QcFft | Method::SqrtFft => Some(1),
            Method::ClassicalMc
            | Method::QmSampling
            | Method::QcSampling
            | Method::SqrtSampling => Some(2),
        }
    }

    pub fn is_quantum(self) -> bool {
        !matches!(self, Method::ClassicalExact | Method::ClassicalMc)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.tag().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Config(format!("unknown method tag `{s}`")))
    }
}

/// Output of an estimator run.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub target_accuracy: f64,
    /// Oracle queries charged, equal to the oracle counter delta of the run.
    pub oracle_queries: u64,
    pub shots: u64,
    pub method: Method,
    pub seed: u64,
    /// Quantum counting only: the solution count `r̂`.
    pub count: Option<u64>,
}

impl Estimate {
    pub fn abs_error(&self, truth: f64) -> f64 {
        (self.value - truth).abs()
    }
}
