use std::time::Instant;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::config::SweepConfig;
use crate::error::Result;
use crate::estimators::EstimatorSpec;
use crate::oracle::IntegrandSpec;

/// One row of the convergence CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    /// Canonical estimator label, e.g. `qm_fft` or `qm_fft(64,5)`.
    pub method: String,
    pub integrand: String,
    pub d: u32,
    pub m: usize,
    pub eps_target: f64,
    pub value: f64,
    pub true_value: f64,
    pub abs_error: f64,
    pub oracle_queries: u64,
    pub shots: u64,
    pub seed: u64,
    pub wall_time_ms: f64,
}

/// A cell that raised an error instead of producing a record.
#[derive(Debug, Clone, PartialEq)]
pub struct CellFailure {
    pub method: String,
    pub integrand: String,
    pub eps_target: f64,
    pub seed: u64,
    pub error: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepOutcome {
    pub records: Vec<SweepRecord>,
    pub failures: Vec<CellFailure>,
}

struct Cell<'a> {
    estimator: &'a EstimatorSpec,
    integrand: &'a IntegrandSpec,
    eps: f64,
    seed: u64,
}

/// RNG seed of a cell: `seed_base` xor a hash of the cell coordinates, so
/// results do not depend on scheduling.
pub fn cell_seed(seed_base: u64, method: &str, integrand: &str, eps: f64, seed: u64) -> u64 {
    let mut h = Sha256::new();
    h.update(method.as_bytes());
    h.update([0]);
    h.update(integrand.as_bytes());
    h.update([0]);
    h.update(eps.to_bits().to_le_bytes());
    h.update(seed.to_le_bytes());
    let digest = h.finalize();
    let mut word = [0u8; 8];
    word.copy_from_slice(&digest[..8]);
    seed_base ^ u64::from_le_bytes(word)
}

/// Run every (estimator, integrand, ε, seed) cell. Failing cells are
/// collected, never fatal. Records come back sorted by
/// (method, integrand, ε, seed).
pub fn run_sweep(config: &SweepConfig) -> Result<SweepOutcome> {
    config.validate()?;
    let mut cells = Vec::new();
    for estimator in &config.estimators {
        for integrand in &config.integrands {
            for &eps in &config.epsilons {
                for &seed in &config.seeds {
                    cells.push(Cell {
                        estimator,
                        integrand,
                        eps,
                        seed,
                    });
                }
            }
        }
    }

    let results: Vec<std::result::Result<SweepRecord, CellFailure>> =
        cells.par_iter().map(|cell| run_cell(cell, config)).collect();

    let mut outcome = SweepOutcome::default();
    for r in results {
        match r {
            Ok(rec) => outcome.records.push(rec),
            Err(fail) => outcome.failures.push(fail),
        }
    }
    outcome.records.sort_by(|a, b| {
        (&a.method, &a.integrand)
            .cmp(&(&b.method, &b.integrand))
            .then(a.eps_target.total_cmp(&b.eps_target))
            .then(a.seed.cmp(&b.seed))
    });
    outcome.failures.sort_by(|a, b| {
        (&a.method, &a.integrand)
            .cmp(&(&b.method, &b.integrand))
            .then(a.eps_target.total_cmp(&b.eps_target))
            .then(a.seed.cmp(&b.seed))
    });
    Ok(outcome)
}

fn run_cell(cell: &Cell<'_>, config: &SweepConfig) -> std::result::Result<SweepRecord, CellFailure> {
    let method = cell.estimator.to_string();
    let integrand = cell.integrand.to_string();
    let fail = |e: crate::Error| CellFailure {
        method: method.clone(),
        integrand: integrand.clone(),
        eps_target: cell.eps,
        seed: cell.seed,
        error: e.to_string(),
    };

    let oracle = cell.integrand.build().map_err(fail)?;
    let table = oracle.table().map_err(fail)?;
    let true_value = table.iter().sum::<f64>() / table.len() as f64;
    let rng_seed = cell_seed(config.seed_base, &method, &integrand, cell.eps, cell.seed);

    let start = Instant::now();
    let est = cell
        .estimator
        .run(&oracle, cell.eps, rng_seed, &config.settings)
        .map_err(fail)?;
    let wall_time_ms = if config.record_wall_time {
        start.elapsed().as_secs_f64() * 1e3
    } else {
        0.0
    };

    let domain = oracle.domain();
    Ok(SweepRecord {
        method,
        integrand,
        d: domain.dims(),
        m: domain.points_per_axis(),
        eps_target: cell.eps,
        value: est.value,
        true_value,
        abs_error: (est.value - true_value).abs(),
        oracle_queries: est.oracle_queries,
        shots: est.shots,
        seed: cell.seed,
        wall_time_ms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(text: &str) -> SweepConfig {
        SweepConfig::parse(text).unwrap()
    }

    #[test]
    fn exhaustive_baseline_rows() {
        let c = config("[sweep]\nintegrands = product@2x4\nestimators = classical_exact\nepsilons = 0.1, 0.2\nseeds = 0..2\n");
        let out = run_sweep(&c).unwrap();
        assert_eq!(out.records.len(), 4);
        for r in &out.records {
            assert_eq!(r.abs_error, 0.0);
            assert_eq!(r.oracle_queries, 16);
        }
        assert!(out.failures.is_empty());
    }

    #[test]
    fn empty_estimator_list() {
        let c = config("[sweep]\nintegrands = linear\nestimators =\nepsilons = 0.1\n");
        assert_eq!(run_sweep(&c).unwrap(), SweepOutcome::default());
    }

    #[test]
    fn failing_cell_does_not_abort() {
        let c = config(
            "[sweep]\nintegrands = linear@1x16\nestimators = qm_fft(4096,1), classical_exact\nepsilons = 0.1\n\
             [tuning]\nqubit_cap = 12\n",
        );
        let out = run_sweep(&c).unwrap();
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.failures.len(), 1);
        assert!(out.failures[0].error.contains("capacity"));
    }

    #[test]
    fn two_register_sizes_meet_their_budgets() {
        let c = config(
            "[sweep]\nintegrands = linear@1x16\nestimators = qm_fft(32,1), qm_fft(256,1)\nepsilons = 0.1\nexact_readout = true\n",
        );
        let out = run_sweep(&c).unwrap();
        assert_eq!(out.records.len(), 2);
        for r in &out.records {
            let a: f64 = if r.method.contains("256") { 256.0 } else { 32.0 };
            assert!(r.abs_error <= std::f64::consts::FRAC_PI_2 / a + 1e-12, "{r:?}");
        }
    }

    #[test]
    fn cell_seeds_differ_by_coordinate() {
        let a = cell_seed(0, "qm_fft", "linear", 0.1, 0);
        assert_ne!(a, cell_seed(0, "qm_fft", "linear", 0.1, 1));
        assert_ne!(a, cell_seed(0, "qm_fft", "linear", 0.2, 0));
        assert_ne!(a, cell_seed(0, "qc_fft", "linear", 0.1, 0));
        assert_eq!(a ^ 5, cell_seed(5, "qm_fft", "linear", 0.1, 0));
    }
}
