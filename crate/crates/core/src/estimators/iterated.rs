use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::amplification::invert_amplification;
use super::sampling::{observed_frequency, shots_for};
use super::{check_accuracy, EstimatorSettings};
use crate::error::{Error, Result};
use crate::estimate::{Estimate, Method};
use crate::oracle::IntegrandOracle;
use crate::statevector::{amplified_state, Preparation, Target};

/// One round of the iterated estimator.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundRecord {
    /// 1-based round index `k`.
    pub round: usize,
    /// Running estimate `E` before this round.
    pub estimate_before: f64,
    /// Shift actually loaded into the rotation (`E` clamped into `[0, 1]`).
    pub shift: f64,
    pub amp_iterations: u64,
    pub shots: u64,
    /// Observed frequency of the target after `N_k` amplifications.
    pub amplified_frequency: f64,
    /// `(S - E) / δ^(k-1)` as estimated this round.
    pub zoomed: f64,
    /// `E` after this round: previous estimate plus `(zoomed - δ/2) δ^(k-1)`.
    pub estimate_after: f64,
    pub restarted: bool,
}

/// Result of [`estimate_mean_grover_iterated`] with the per-round trace.
#[derive(Debug, Clone, PartialEq)]
pub struct IteratedRun {
    pub estimate: Estimate,
    pub delta: f64,
    pub rounds: Vec<RoundRecord>,
}

fn check_delta(delta: f64) -> Result<()> {
    if (0.125..=0.5).contains(&delta) {
        Ok(())
    } else {
        Err(Error::domain(format!("zoom factor {delta} outside [1/8, 1/2]")))
    }
}

/// Number of rounds `K = ceil(ln ε / ln δ)`.
pub(crate) fn round_count(eps: f64, delta: f64) -> usize {
    ((eps.ln() / delta.ln()) - 1e-12).ceil().max(1.0) as usize
}

/// Iterated estimates: each round rotates by `f - E`, amplifies the residual
/// `S - E` with `N_k` Grover iterates, and zooms in by `δ`. The residual of
/// each round sits in `[0, δ^(k-1)]` so the amplified angle stays on the
/// monotone branch of `sin²`.
///
/// Every round charges `shots · (1 + 2 N_k)` queries. The value is the
/// centre of the final interval.
pub fn estimate_mean_grover_iterated(
    oracle: &IntegrandOracle,
    eps: f64,
    delta: f64,
    seed: u64,
    settings: &EstimatorSettings,
) -> Result<IteratedRun> {
    check_accuracy(eps)?;
    check_delta(delta)?;
    let before = oracle.queries();
    let rounds = round_count(eps, delta);
    let shots = shots_for(delta, settings.shots_constant);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trace = Vec::with_capacity(rounds);
    let mut estimate = 0.0f64;
    let mut value = 0.0;

    for k in 1..=rounds {
        let scale = delta.powi(k as i32 - 1);
        let n = (settings.delta_safety / scale).floor() as u64;
        let shift = estimate.clamp(0.0, 1.0);
        let prep = Preparation::GroverU { oracle, shift };
        let state = amplified_state(&prep, Target::Basis(1), n, settings.qubit_cap)?;
        let p = state.probability_of_target(Target::Basis(1))?;
        let per_shot = 1 + 2 * n;
        oracle.record_queries((shots - 1) * per_shot);

        // With the shift clamped to 1 the residual `S - 1` is known to be
        // non-positive; otherwise the construction keeps it non-negative.
        let sign = if estimate > 1.0 { -1.0 } else { 1.0 };
        let mut restarted = false;
        let (freq, zoomed) = loop {
            let freq = observed_frequency(p, shots, &mut rng, settings.readout)?;
            let (residual, _) = invert_amplification(freq, n);
            let zoomed = (sign * residual + (shift - estimate)) / scale;
            if zoomed <= 1.0 + delta {
                break (freq, zoomed);
            }
            if restarted {
                return Err(Error::Inconsistent {
                    round: k,
                    detail: format!("zoomed residual {zoomed:.4} above 1 + δ twice"),
                });
            }
            restarted = true;
            oracle.record_queries(shots * per_shot);
        };

        value = estimate + zoomed * scale;
        let after = estimate + (zoomed - delta / 2.0) * scale;
        trace.push(RoundRecord {
            round: k,
            estimate_before: estimate,
            shift,
            amp_iterations: n,
            shots,
            amplified_frequency: freq,
            zoomed,
            estimate_after: after,
            restarted,
        });
        estimate = after;
    }

    let total_shots = trace.iter().map(|r| r.shots * (1 + u64::from(r.restarted))).sum();
    Ok(IteratedRun {
        estimate: Estimate {
            value: value.clamp(0.0, 1.0),
            target_accuracy: eps,
            oracle_queries: oracle.queries() - before,
            shots: total_shots,
            method: Method::QmIterated,
            seed,
            count: None,
        },
        delta,
        rounds: trace,
    })
}
