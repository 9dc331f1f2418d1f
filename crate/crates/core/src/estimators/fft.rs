use std::f64::consts::PI;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{check_accuracy, median, EstimatorSettings, Readout};
use crate::error::{Error, Result};
use crate::estimate::{Estimate, Method};
use crate::oracle::{BooleanOracle, IntegrandOracle};
use crate::statevector::{build_counting_state, queries_per_iterate, Preparation, Target};

/// Counting register size and the number of independent repetitions whose
/// median is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountingConfig {
    /// `log2 A`; `None` picks the smallest `A ≥ π/ε`.
    pub counting_qubits: Option<u32>,
    pub reps: usize,
}

impl Default for CountingConfig {
    fn default() -> Self {
        CountingConfig {
            counting_qubits: None,
            reps: 5,
        }
    }
}

impl CountingConfig {
    pub fn with_size(counting_size: usize, reps: usize) -> Result<Self> {
        if !counting_size.is_power_of_two() || counting_size < 2 {
            return Err(Error::domain(format!(
                "counting register size {counting_size} is not a power of two >= 2"
            )));
        }
        Ok(CountingConfig {
            counting_qubits: Some(counting_size.trailing_zeros()),
            reps,
        })
    }

    fn resolve(&self, eps: f64) -> Result<u32> {
        if self.reps == 0 {
            return Err(Error::domain("need at least one repetition"));
        }
        Ok(self.counting_qubits.unwrap_or_else(|| counting_qubits_for(eps)))
    }
}

/// Smallest `t` with `2^t ≥ ceil(π/ε)`.
pub fn counting_qubits_for(eps: f64) -> u32 {
    let need = (PI / eps).ceil() as u64;
    need.max(2).next_power_of_two().trailing_zeros()
}

enum Peak {
    Sine,
    SineSquared,
}

impl Peak {
    fn value(&self, folded: usize, size: usize) -> f64 {
        let s = (PI * folded as f64 / size as f64).sin();
        match self {
            Peak::Sine => s,
            Peak::SineSquared => s * s,
        }
    }
}

/// Run the Fourier readout `reps` times and return the folded peaks
/// `min(m, A - m)`. The state is simulated once; `charge` is called with the
/// queries of the repetitions that were not simulated.
fn fourier_peaks(
    prep: &Preparation<'_>,
    target: Target<'_>,
    counting_qubits: u32,
    reps: usize,
    seed: u64,
    settings: &EstimatorSettings,
    charge: impl Fn(u64),
) -> Result<Vec<usize>> {
    let size = 1usize << counting_qubits;
    let mut state = build_counting_state(prep, target, counting_qubits, settings.qubit_cap)?;
    state.dft_counting_register()?;
    let dist = state.counting_distribution();
    let per_rep = (size as u64 - 1) * queries_per_iterate(prep, target);
    charge((reps as u64 - 1) * per_rep);

    let fold = |m: usize| m.min(size - m);
    match settings.readout {
        Readout::Exact => {
            let (m, _) = dist
                .iter()
                .enumerate()
                .fold((0, f64::MIN), |best, (m, &p)| if p > best.1 { (m, p) } else { best });
            Ok(vec![fold(m)])
        }
        Readout::Sampled => {
            let weights = WeightedIndex::new(&dist)
                .map_err(|e| Error::domain(format!("counting distribution: {e}")))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((0..reps).map(|_| fold(weights.sample(&mut rng))).collect())
        }
    }
}

fn peak_estimate(peaks: &[usize], size: usize, peak: Peak) -> f64 {
    let mut values: Vec<f64> = peaks.iter().map(|&m| peak.value(m, size)).collect();
    median(&mut values)
}

/// Fourier readout of the Grover rotation for `W⁻¹RW`: `Ŝ = sin(π m / A)`.
pub fn estimate_mean_grover_fft(
    oracle: &IntegrandOracle,
    eps: f64,
    config: CountingConfig,
    seed: u64,
    settings: &EstimatorSettings,
) -> Result<Estimate> {
    check_accuracy(eps)?;
    let t = config.resolve(eps)?;
    let before = oracle.queries();
    let prep = Preparation::GroverU { oracle, shift: 0.0 };
    let peaks = fourier_peaks(&prep, Target::Basis(1), t, config.reps, seed, settings, |n| {
        oracle.record_queries(n)
    })?;
    Ok(Estimate {
        value: peak_estimate(&peaks, 1 << t, Peak::Sine),
        target_accuracy: eps,
        oracle_queries: oracle.queries() - before,
        shots: config.reps as u64,
        method: Method::QmGroverFft,
        seed,
        count: None,
    })
}

/// Quantum counting on the boolean extension: `r̂ = N sin²(π m / A)` and
/// `Ŝ = r̂ / N`.
pub fn estimate_count_fft(
    oracle: &BooleanOracle<'_>,
    eps: f64,
    config: CountingConfig,
    seed: u64,
    settings: &EstimatorSettings,
) -> Result<Estimate> {
    check_accuracy(eps)?;
    let t = config.resolve(eps)?;
    let before = oracle.queries();
    let prep = Preparation::HadamardOnly {
        qubits: oracle.domain_bits(),
    };
    let peaks = fourier_peaks(&prep, Target::Marked(oracle), t, config.reps, seed, settings, |n| {
        oracle.record_queries(n)
    })?;
    let value = peak_estimate(&peaks, 1 << t, Peak::SineSquared);
    Ok(Estimate {
        value,
        target_accuracy: eps,
        oracle_queries: oracle.queries() - before,
        shots: config.reps as u64,
        method: Method::QcFft,
        seed,
        count: Some((value * oracle.domain_size() as f64).round() as u64),
    })
}

/// Fourier readout for `R̂W` with the ancilla as target: `Ŝ = sin²(π m / A)`.
pub fn estimate_mean_sqrt_fft(
    oracle: &IntegrandOracle,
    eps: f64,
    config: CountingConfig,
    seed: u64,
    settings: &EstimatorSettings,
) -> Result<Estimate> {
    check_accuracy(eps)?;
    let t = config.resolve(eps)?;
    let before = oracle.queries();
    let prep = Preparation::SqrtRot { oracle };
    let peaks = fourier_peaks(&prep, Target::AncillaOne, t, config.reps, seed, settings, |n| {
        oracle.record_queries(n)
    })?;
    Ok(Estimate {
        value: peak_estimate(&peaks, 1 << t, Peak::SineSquared),
        target_accuracy: eps,
        oracle_queries: oracle.queries() - before,
        shots: config.reps as u64,
        method: Method::SqrtFft,
        seed,
        count: None,
    })
}
