use std::collections::BTreeMap;

use super::sweep::SweepRecord;
use crate::error::{Error, Result};
use crate::estimators::median;

/// Least-squares line through `log2(queries)` against `log2(1/error)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFit {
    /// Complexity exponent: `queries ∝ (1/error)^slope`.
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// `(eps_target, median queries, median abs_error)` per accuracy.
    pub points: Vec<(f64, f64, f64)>,
}

/// Does `label` (a CSV method column) belong to `method`? Either an exact
/// label match or the bare tag, so `qm_fft` matches `qm_fft(64,5)` too.
pub fn method_matches(label: &str, method: &str) -> bool {
    label == method || (!method.contains('(') && label.split('(').next() == Some(method))
}

/// Fit the query/accuracy power law of one method. Records are grouped by
/// target accuracy and reduced to the median queries and median achieved
/// error over everything else (seeds, integrands). Groups with zero median
/// error are dropped.
pub fn fit_scaling(records: &[SweepRecord], method: &str) -> Result<ScalingFit> {
    let mut groups: BTreeMap<u64, (Vec<f64>, Vec<f64>)> = BTreeMap::new();
    for r in records.iter().filter(|r| method_matches(&r.method, method)) {
        let g = groups.entry(r.eps_target.to_bits()).or_default();
        g.0.push(r.oracle_queries as f64);
        g.1.push(r.abs_error);
    }
    let points: Vec<(f64, f64, f64)> = groups
        .into_iter()
        .map(|(eps, (mut q, mut e))| (f64::from_bits(eps), median(&mut q), median(&mut e)))
        .filter(|&(_, q, e)| q > 0.0 && e > 0.0 && e.is_finite())
        .collect();
    if points.len() < 4 {
        return Err(Error::Fit(format!(
            "{method}: need at least 4 accuracies with non-zero error, have {}",
            points.len()
        )));
    }

    let xs: Vec<f64> = points.iter().map(|p| -p.2.log2()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.log2()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit(format!("{method}: achieved errors do not vary")));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(ScalingFit {
        slope,
        intercept,
        r_squared,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(method: &str, power: i32) -> Vec<SweepRecord> {
        (3..10)
            .flat_map(|k| {
                let eps = 2f64.powi(-k);
                (0..3).map(move |seed| SweepRecord {
                    method: method.to_string(),
                    integrand: "linear".into(),
                    d: 1,
                    m: 16,
                    eps_target: eps,
                    value: 0.0,
                    true_value: 0.0,
                    abs_error: eps,
                    oracle_queries: 2f64.powi(k * power) as u64,
                    shots: 1,
                    seed,
                    wall_time_ms: 0.0,
                })
            })
            .collect()
    }

    #[test]
    fn planted_exponents() {
        let mut recs = synthetic("qm_fft", 1);
        recs.extend(synthetic("qm_sampling", 2));
        let f = fit_scaling(&recs, "qm_fft").unwrap();
        assert!((f.slope - 1.0).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        assert!(f.intercept.abs() < 1e-12);
        let f = fit_scaling(&recs, "qm_sampling").unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12);
    }

    #[test]
    fn too_few_points() {
        let recs: Vec<_> = synthetic("qm_fft", 1).into_iter().take(9).collect();
        assert!(matches!(fit_scaling(&recs, "qm_fft"), Err(Error::Fit(_))));
        assert!(fit_scaling(&recs, "qc_fft").is_err());
    }

    #[test]
    fn label_matching() {
        assert!(method_matches("qm_fft(64,5)", "qm_fft"));
        assert!(method_matches("qm_fft(64,5)", "qm_fft(64,5)"));
        assert!(!method_matches("qm_fft(64,5)", "qm_fft(32,5)"));
        assert!(!method_matches("qm_fft", "qm"));
    }
}
