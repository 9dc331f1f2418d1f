use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use super::{check_accuracy, EstimatorSettings, Readout};
use crate::error::{Error, Result};
use crate::estimate::{Estimate, Method};
use crate::oracle::{BooleanOracle, IntegrandOracle};
use crate::statevector::{prepare, Preparation, Target};

/// `ceil(c / x²)`.
pub fn shots_for(accuracy: f64, shots_constant: f64) -> u64 {
    (shots_constant / (accuracy * accuracy)).ceil().max(1.0) as u64
}

/// Fraction of `shots` independent measurements that land in an event of
/// probability `p`. Drawing the hit count from `Binomial(shots, p)` has the
/// same law as measuring shot by shot.
pub(crate) fn observed_frequency(p: f64, shots: u64, rng: &mut ChaCha8Rng, readout: Readout) -> Result<f64> {
    let p = p.clamp(0.0, 1.0);
    match readout {
        Readout::Exact => Ok(p),
        Readout::Sampled => {
            let hits = Binomial::new(shots, p)
                .map_err(|e| Error::domain(format!("binomial({shots}, {p}): {e}")))?
                .sample(rng);
            Ok(hits as f64 / shots as f64)
        }
    }
}

/// Mean estimation by repeated measurement of `|1⟩|0…0⟩` after `W⁻¹RW`:
/// `Ŝ = sqrt(hits / shots)` with `shots = ceil(c_s / ε²)`.
pub fn estimate_mean_sampling(
    oracle: &IntegrandOracle,
    eps: f64,
    seed: u64,
    settings: &EstimatorSettings,
) -> Result<Estimate> {
    check_accuracy(eps)?;
    let before = oracle.queries();
    let shots = shots_for(eps, settings.shots_constant);
    let prep = Preparation::GroverU { oracle, shift: 0.0 };
    let state = prepare(&prep, prep.system_layout(settings.qubit_cap)?)?;
    let p = state.probability_of_target(Target::Basis(1))?;
    oracle.record_queries((shots - 1) * prep.queries_per_application());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let freq = observed_frequency(p, shots, &mut rng, settings.readout)?;
    Ok(Estimate {
        value: freq.sqrt(),
        target_accuracy: eps,
        oracle_queries: oracle.queries() - before,
        shots,
        method: Method::QmSampling,
        seed,
        count: None,
    })
}

/// Counting by repeated measurement of the uniform superposition over the
/// boolean domain. Each shot classifies its outcome with one query to `b`.
/// The value is `r̂ / (M^d Q)`.
pub fn estimate_count_sampling(
    oracle: &BooleanOracle<'_>,
    eps: f64,
    seed: u64,
    settings: &EstimatorSettings,
) -> Result<Estimate> {
    check_accuracy(eps)?;
    let before = oracle.queries();
    let shots = shots_for(eps, settings.shots_constant);
    let prep = Preparation::HadamardOnly {
        qubits: oracle.domain_bits(),
    };
    let state = prepare(&prep, prep.system_layout(settings.qubit_cap)?)?;
    let p = state.probability_of_target(Target::Marked(oracle))?;
    oracle.record_queries(shots);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let freq = observed_frequency(p, shots, &mut rng, settings.readout)?;
    let count = (freq * oracle.domain_size() as f64).round() as u64;
    Ok(Estimate {
        value: freq,
        target_accuracy: eps,
        oracle_queries: oracle.queries() - before,
        shots,
        method: Method::QcSampling,
        seed,
        count: Some(count),
    })
}

/// Mean estimation from the ancilla of `R̂W`: `Ŝ = hits / shots`.
pub fn estimate_mean_sqrt_sampling(
    oracle: &IntegrandOracle,
    eps: f64,
    seed: u64,
    settings: &EstimatorSettings,
) -> Result<Estimate> {
    check_accuracy(eps)?;
    let before = oracle.queries();
    let shots = shots_for(eps, settings.shots_constant);
    let prep = Preparation::SqrtRot { oracle };
    let state = prepare(&prep, prep.system_layout(settings.qubit_cap)?)?;
    let p = state.probability_of_target(Target::AncillaOne)?;
    oracle.record_queries((shots - 1) * prep.queries_per_application());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let freq = observed_frequency(p, shots, &mut rng, settings.readout)?;
    Ok(Estimate {
        value: freq,
        target_accuracy: eps,
        oracle_queries: oracle.queries() - before,
        shots,
        method: Method::SqrtSampling,
        seed,
        count: None,
    })
}
