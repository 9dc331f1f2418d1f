//! Quantum mean estimators.
//!
//! | preparation | target                 | readout  | method tag      |
//! |-------------|------------------------|----------|-----------------|
//! | `W⁻¹RW`     | `|1⟩|0…0⟩`             | sampling, iterated | `qm_iterated` (`qm_sampling` is one round) |
//! | `W⁻¹RW`     | `|1⟩|0…0⟩`             | Fourier  | `qm_fft`        |
//! | `W`         | solutions of `b`       | sampling | `qc_sampling`   |
//! | `W`         | solutions of `b`       | Fourier  | `qc_fft`        |
//! | `R̂W`        | ancilla `|1⟩`          | sampling | `sqrt_sampling` |
//! | `R̂W`        | ancilla `|1⟩`          | Fourier  | `sqrt_fft`      |
//!
//! Every estimator simulates its circuit once and charges the oracle for
//! every physical repetition (shots, median repetitions), so
//! `Estimate::oracle_queries` always equals the oracle counter delta.

mod amplification;
mod fft;
mod iterated;
mod sampling;
mod spec;

pub use amplification::invert_amplification;
pub use fft::{
    counting_qubits_for, estimate_count_fft, estimate_mean_grover_fft, estimate_mean_sqrt_fft,
    CountingConfig,
};
pub use iterated::{estimate_mean_grover_iterated, IteratedRun, RoundRecord};
pub use sampling::{
    estimate_count_sampling, estimate_mean_sampling, estimate_mean_sqrt_sampling, shots_for,
};
pub use spec::{estimate_moment, levels_for, EstimatorSpec};

use crate::error::{Error, Result};
use crate::statevector::DEFAULT_QUBIT_CAP;

/// How measurement outcomes are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Readout {
    /// Seeded draws from the Born distribution.
    #[default]
    Sampled,
    /// Read probabilities directly from the statevector (no shot noise).
    /// Query and shot accounting still reflect the sampled algorithm.
    Exact,
}

/// Knobs shared by all estimators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorSettings {
    /// `c_s` in `shots = ceil(c_s / ε²)` (and `ceil(c_s / δ²)` per round).
    pub shots_constant: f64,
    /// Iterated estimator amplifies `N_k = floor(delta_safety / δ^(k-1))` times.
    pub delta_safety: f64,
    pub readout: Readout,
    pub qubit_cap: u32,
}

impl Default for EstimatorSettings {
    fn default() -> Self {
        EstimatorSettings {
            shots_constant: 16.0,
            delta_safety: 0.5,
            readout: Readout::Sampled,
            qubit_cap: DEFAULT_QUBIT_CAP,
        }
    }
}

impl EstimatorSettings {
    pub fn exact() -> Self {
        EstimatorSettings {
            readout: Readout::Exact,
            ..Default::default()
        }
    }
}

pub(crate) fn check_accuracy(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 0.5 {
        Ok(())
    } else {
        Err(Error::domain(format!("target accuracy {eps} outside (0, 1/2)")))
    }
}

pub(crate) fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}
