//! Classical baselines: exhaustive summation and plain Monte Carlo.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::grid::IntegrandOracle;
use crate::error::{Error, Result};
use crate::estimate::{Estimate, Method};

/// Exact grid mean `S` by querying every point once (`M^d` queries).
pub fn true_mean(oracle: &IntegrandOracle) -> Result<f64> {
    let n = oracle.domain().check_enumerable("grid points")?;
    let mut sum = 0.0;
    for i in 0..n {
        sum += oracle.query(i)?;
    }
    Ok(sum / n as f64)
}

/// Exhaustive baseline wrapped as an [`Estimate`].
pub fn exact_estimate(oracle: &IntegrandOracle, eps: f64, seed: u64) -> Result<Estimate> {
    let before = oracle.queries();
    let value = true_mean(oracle)?;
    Ok(Estimate {
        value,
        target_accuracy: eps,
        oracle_queries: oracle.queries() - before,
        shots: 0,
        method: Method::ClassicalExact,
        seed,
        count: None,
    })
}

/// Mean of `f` at `n` grid points drawn uniformly with replacement.
pub fn monte_carlo_estimate(
    oracle: &IntegrandOracle,
    n_samples: u64,
    eps: f64,
    seed: u64,
) -> Result<Estimate> {
    if n_samples == 0 {
        return Err(Error::domain("Monte Carlo needs at least one sample"));
    }
    let size = oracle.domain().size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let before = oracle.queries();
    let mut sum = 0.0;
    for _ in 0..n_samples {
        let point = rng.random_range(0..size) as usize;
        sum += oracle.query(point)?;
    }
    Ok(Estimate {
        value: sum / n_samples as f64,
        target_accuracy: eps,
        oracle_queries: oracle.queries() - before,
        shots: n_samples,
        method: Method::ClassicalMc,
        seed,
        count: None,
    })
}
