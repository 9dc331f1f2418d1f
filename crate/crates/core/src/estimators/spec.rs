use std::fmt;
use std::str::FromStr;

use super::fft::{estimate_count_fft, estimate_mean_grover_fft, estimate_mean_sqrt_fft, CountingConfig};
use super::iterated::estimate_mean_grover_iterated;
use super::sampling::{
    estimate_count_sampling, estimate_mean_sampling, estimate_mean_sqrt_sampling, shots_for,
};
use super::EstimatorSettings;
use crate::error::{Error, Result};
use crate::estimate::{Estimate, Method};
use crate::oracle::{
    exact_estimate, make_stochastic_oracle, monte_carlo_estimate, BooleanOracle, IntegrandOracle,
    StochasticProcessSpec,
};

const DEFAULT_DELTA: f64 = 0.25;
const DEFAULT_REPS: usize = 5;

/// Smallest power of two `Q ≥ max(2, 1/ε)`.
pub fn levels_for(eps: f64) -> usize {
    ((1.0 / eps).ceil() as usize).max(2).next_power_of_two()
}

/// An estimator with its parameters, written `tag(arg, …)`. Omitted or
/// `auto` arguments are derived from the target accuracy.
///
/// ```
/// # use qmean::estimators::EstimatorSpec;
/// let s: EstimatorSpec = "qc_fft(auto,256)".parse().unwrap();
/// assert_eq!(s.to_string(), "qc_fft(auto,256,5)");
/// assert_eq!("qm_iterated(0.25)".parse::<EstimatorSpec>().unwrap().to_string(), "qm_iterated");
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EstimatorSpec {
    ClassicalExact,
    ClassicalMc { samples: Option<u64> },
    QmSampling,
    QmIterated { delta: f64 },
    QmFft { size: Option<usize>, reps: usize },
    QcSampling { levels: Option<usize> },
    QcFft { levels: Option<usize>, size: Option<usize>, reps: usize },
    SqrtSampling,
    SqrtFft { size: Option<usize>, reps: usize },
}

impl EstimatorSpec {
    pub fn method(&self) -> Method {
        match self {
            EstimatorSpec::ClassicalExact => Method::ClassicalExact,
            EstimatorSpec::ClassicalMc { .. } => Method::ClassicalMc,
            EstimatorSpec::QmSampling => Method::QmSampling,
            EstimatorSpec::QmIterated { .. } => Method::QmIterated,
            EstimatorSpec::QmFft { .. } => Method::QmGroverFft,
            EstimatorSpec::QcSampling { .. } => Method::QcSampling,
            EstimatorSpec::QcFft { .. } => Method::QcFft,
            EstimatorSpec::SqrtSampling => Method::SqrtSampling,
            EstimatorSpec::SqrtFft { .. } => Method::SqrtFft,
        }
    }

    /// Default parameters for a method.
    pub fn default_for(method: Method) -> Self {
        match method {
            Method::ClassicalExact => EstimatorSpec::ClassicalExact,
            Method::ClassicalMc => EstimatorSpec::ClassicalMc { samples: None },
            Method::QmSampling => EstimatorSpec::QmSampling,
            Method::QmIterated => EstimatorSpec::QmIterated { delta: DEFAULT_DELTA },
            Method::QmGroverFft => EstimatorSpec::QmFft { size: None, reps: DEFAULT_REPS },
            Method::QcSampling => EstimatorSpec::QcSampling { levels: None },
            Method::QcFft => EstimatorSpec::QcFft {
                levels: None,
                size: None,
                reps: DEFAULT_REPS,
            },
            Method::SqrtSampling => EstimatorSpec::SqrtSampling,
            Method::SqrtFft => EstimatorSpec::SqrtFft { size: None, reps: DEFAULT_REPS },
        }
    }

    /// Split a comma-separated list, ignoring commas inside parentheses.
    pub fn parse_list(s: &str) -> Result<Vec<EstimatorSpec>> {
        split_top_level(s)?
            .into_iter()
            .filter(|item| !item.is_empty())
            .map(str::parse)
            .collect()
    }

    /// Run on a grid oracle. Counting variants build the boolean extension
    /// internally; their queries land on that extension, not on `oracle`.
    pub fn run(
        &self,
        oracle: &IntegrandOracle,
        eps: f64,
        seed: u64,
        settings: &EstimatorSettings,
    ) -> Result<Estimate> {
        match *self {
            EstimatorSpec::ClassicalExact => exact_estimate(oracle, eps, seed),
            EstimatorSpec::ClassicalMc { samples } => {
                let n = samples.unwrap_or_else(|| shots_for(eps, settings.shots_constant));
                monte_carlo_estimate(oracle, n, eps, seed)
            }
            EstimatorSpec::QmSampling => estimate_mean_sampling(oracle, eps, seed, settings),
            EstimatorSpec::QmIterated { delta } => {
                Ok(estimate_mean_grover_iterated(oracle, eps, delta, seed, settings)?.estimate)
            }
            EstimatorSpec::QmFft { size, reps } => {
                estimate_mean_grover_fft(oracle, eps, counting(size, reps)?, seed, settings)
            }
            EstimatorSpec::QcSampling { levels } => {
                let b = BooleanOracle::new(oracle, levels.unwrap_or_else(|| levels_for(eps)))?;
                estimate_count_sampling(&b, eps, seed, settings)
            }
            EstimatorSpec::QcFft { levels, size, reps } => {
                let b = BooleanOracle::new(oracle, levels.unwrap_or_else(|| levels_for(eps)))?;
                estimate_count_fft(&b, eps, counting(size, reps)?, seed, settings)
            }
            EstimatorSpec::SqrtSampling => estimate_mean_sqrt_sampling(oracle, eps, seed, settings),
            EstimatorSpec::SqrtFft { size, reps } => {
                estimate_mean_sqrt_fft(oracle, eps, counting(size, reps)?, seed, settings)
            }
        }
    }
}

fn counting(size: Option<usize>, reps: usize) -> Result<CountingConfig> {
    match size {
        Some(a) => CountingConfig::with_size(a, reps),
        None => Ok(CountingConfig {
            counting_qubits: None,
            reps,
        }),
    }
}

fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Config(format!("unbalanced `)` in `{s}`")));
                }
            }
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Config(format!("unbalanced `(` in `{s}`")));
    }
    out.push(s[start..].trim());
    Ok(out)
}

fn parse_arg<T: FromStr>(tag: &str, arg: Option<&str>) -> Result<Option<T>> {
    match arg.map(str::trim) {
        None | Some("") | Some("auto") => Ok(None),
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|_| Error::Config(format!("bad argument `{v}` for {tag}"))),
    }
}

impl FromStr for EstimatorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (tag, args) = match s.find('(') {
            Some(open) => {
                let inner = s[open + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Config(format!("missing `)` in `{s}`")))?;
                (s[..open].trim(), inner.split(',').collect::<Vec<_>>())
            }
            None => (s, Vec::new()),
        };
        let method: Method = tag.parse()?;
        let arity = match method {
            Method::ClassicalExact | Method::QmSampling | Method::SqrtSampling => 0,
            Method::ClassicalMc | Method::QmIterated | Method::QcSampling => 1,
            Method::QmGroverFft | Method::SqrtFft => 2,
            Method::QcFft => 3,
        };
        let nonempty = args.len() > 1 || args.first().is_some_and(|a| !a.trim().is_empty());
        if nonempty && args.len() > arity {
            return Err(Error::Config(format!(
                "{tag} takes at most {arity} arguments, got {}",
                args.len()
            )));
        }
        let arg = |i: usize| args.get(i).copied();
        let reps = |i: usize| -> Result<usize> {
            let r = parse_arg(tag, arg(i))?.unwrap_or(DEFAULT_REPS);
            if r == 0 {
                return Err(Error::Config(format!("{tag}: repetitions must be positive")));
            }
            Ok(r)
        };
        Ok(match method {
            Method::ClassicalExact => EstimatorSpec::ClassicalExact,
            Method::ClassicalMc => EstimatorSpec::ClassicalMc {
                samples: parse_arg(tag, arg(0))?,
            },
            Method::QmSampling => EstimatorSpec::QmSampling,
            Method::QmIterated => EstimatorSpec::QmIterated {
                delta: parse_arg(tag, arg(0))?.unwrap_or(DEFAULT_DELTA),
            },
            Method::QmGroverFft => EstimatorSpec::QmFft {
                size: parse_arg(tag, arg(0))?,
                reps: reps(1)?,
            },
            Method::QcSampling => EstimatorSpec::QcSampling {
                levels: parse_arg(tag, arg(0))?,
            },
            Method::QcFft => EstimatorSpec::QcFft {
                levels: parse_arg(tag, arg(0))?,
                size: parse_arg(tag, arg(1))?,
                reps: reps(2)?,
            },
            Method::SqrtSampling => EstimatorSpec::SqrtSampling,
            Method::SqrtFft => EstimatorSpec::SqrtFft {
                size: parse_arg(tag, arg(0))?,
                reps: reps(1)?,
            },
        })
    }
}

struct Auto<T>(Option<T>);

impl<T: fmt::Display> fmt::Display for Auto<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Some(v) => v.fmt(f),
            None => f.write_str("auto"),
        }
    }
}

/// Canonical label: the bare tag when every parameter has its default,
/// otherwise the full argument list.
impl fmt::Display for EstimatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = self.method().tag();
        if *self == EstimatorSpec::default_for(self.method()) {
            return f.write_str(tag);
        }
        match *self {
            EstimatorSpec::ClassicalMc { samples } => write!(f, "{tag}({})", Auto(samples)),
            EstimatorSpec::QmIterated { delta } => write!(f, "{tag}({delta})"),
            EstimatorSpec::QmFft { size, reps } | EstimatorSpec::SqrtFft { size, reps } => {
                write!(f, "{tag}({},{reps})", Auto(size))
            }
            EstimatorSpec::QcSampling { levels } => write!(f, "{tag}({})", Auto(levels)),
            EstimatorSpec::QcFft { levels, size, reps } => {
                write!(f, "{tag}({},{},{reps})", Auto(levels), Auto(size))
            }
            _ => f.write_str(tag),
        }
    }
}

/// `p`-th moment of the scaled statistic of a discretised process, estimated
/// by `method` on the process's path-space oracle.
pub fn estimate_moment(
    process: &StochasticProcessSpec,
    eps: f64,
    method: &EstimatorSpec,
    seed: u64,
    settings: &EstimatorSettings,
) -> Result<Estimate> {
    let oracle = make_stochastic_oracle(process)?;
    method.run(&oracle, eps, seed, settings)
}
