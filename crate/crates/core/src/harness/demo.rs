use std::fmt::Write;

use super::config::SweepConfig;
use super::fit::method_matches;
use super::sweep::{run_sweep, SweepOutcome};
use crate::error::Result;
use crate::estimate::Method;
use crate::estimators::{median, EstimatorSettings, EstimatorSpec, Readout};
use crate::oracle::BUILTIN_SET;

pub const DEMO_ACCURACY: f64 = 1.0 / 64.0;

fn row_labels(method: Method) -> (&'static str, &'static str, &'static str) {
    match method {
        Method::ClassicalExact => ("-", "-", "enumerate"),
        Method::ClassicalMc => ("-", "-", "random points"),
        Method::QmSampling => ("W⁻¹RW", "|1⟩|0…0⟩", "sampling"),
        Method::QmIterated => ("W⁻¹RW", "|1⟩|0…0⟩", "iterated"),
        Method::QmGroverFft => ("W⁻¹RW", "|1⟩|0…0⟩", "Fourier"),
        Method::QcSampling => ("W", "b = 1", "sampling"),
        Method::QcFft => ("W", "b = 1", "Fourier"),
        Method::SqrtSampling => ("R̂W", "ancilla |1⟩", "sampling"),
        Method::SqrtFft => ("R̂W", "ancilla |1⟩", "Fourier"),
    }
}

fn complexity(method: Method) -> &'static str {
    match method.complexity_exponent() {
        None => "M^d",
        Some(1) => "1/ε",
        Some(_) => "1/ε²",
    }
}

/// Every method on the built-in integrands at `ε = 2⁻⁶`.
pub fn demo_config(seed_base: u64, exact: bool) -> SweepConfig {
    SweepConfig {
        integrands: BUILTIN_SET.iter().map(|s| s.parse().expect("built-in spec")).collect(),
        estimators: Method::ALL.iter().map(|&m| EstimatorSpec::default_for(m)).collect(),
        epsilons: vec![DEMO_ACCURACY],
        seeds: (0..3).collect(),
        seed_base,
        output: None,
        record_wall_time: false,
        settings: EstimatorSettings {
            readout: if exact { Readout::Exact } else { Readout::Sampled },
            ..EstimatorSettings::default()
        },
    }
}

/// Run the demo and render one table row per method.
pub fn run_demo(seed_base: u64, exact: bool) -> Result<(SweepOutcome, String)> {
    let outcome = run_sweep(&demo_config(seed_base, exact))?;
    let mut table = String::new();
    let _ = writeln!(
        table,
        "{:<16} {:<8} {:<13} {:<13} {:<10} {:>14} {:>12} {:>12}",
        "method", "prep", "target", "readout", "complexity", "median queries", "median err", "max err"
    );
    for method in Method::ALL {
        let rows: Vec<_> = outcome
            .records
            .iter()
            .filter(|r| method_matches(&r.method, method.tag()))
            .collect();
        if rows.is_empty() {
            continue;
        }
        let mut q: Vec<f64> = rows.iter().map(|r| r.oracle_queries as f64).collect();
        let mut e: Vec<f64> = rows.iter().map(|r| r.abs_error).collect();
        let max_err = e.iter().cloned().fold(0.0, f64::max);
        let (prep, target, readout) = row_labels(method);
        let _ = writeln!(
            table,
            "{:<16} {:<8} {:<13} {:<13} {:<10} {:>14.0} {:>12.3e} {:>12.3e}",
            method.tag(),
            prep,
            target,
            readout,
            complexity(method),
            median(&mut q),
            median(&mut e),
            max_err
        );
    }
    if !outcome.failures.is_empty() {
        let _ = writeln!(table, "{} cells failed", outcome.failures.len());
    }
    Ok((outcome, table))
}
