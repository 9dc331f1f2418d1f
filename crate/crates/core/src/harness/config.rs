use std::path::{Path, PathBuf};

use ini::Ini;

use crate::error::{Error, Result};
use crate::estimators::{EstimatorSettings, EstimatorSpec, Readout};
use crate::oracle::IntegrandSpec;

/// A sweep over integrands × estimators × accuracies × seeds.
///
/// ```text
/// [sweep]
/// integrands = linear@1x16, walk:4
/// estimators = qm_iterated, qc_fft(auto,auto,5), classical_mc
/// epsilons   = 2^-3, 2^-4, 0.01
/// seeds      = 0..5
/// seed_base  = 20240101
/// exact_readout = false
/// output     = results.csv
///
/// [tuning]
/// shots_constant = 16
/// delta_safety   = 0.5
/// qubit_cap      = 26
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub integrands: Vec<IntegrandSpec>,
    pub estimators: Vec<EstimatorSpec>,
    pub epsilons: Vec<f64>,
    pub seeds: Vec<u64>,
    pub seed_base: u64,
    pub output: Option<PathBuf>,
    /// Fill `wall_time_ms`. Off by default so reruns are byte-identical.
    pub record_wall_time: bool,
    pub settings: EstimatorSettings,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            integrands: Vec::new(),
            estimators: Vec::new(),
            epsilons: Vec::new(),
            seeds: vec![0],
            seed_base: 0,
            output: None,
            record_wall_time: false,
            settings: EstimatorSettings::default(),
        }
    }
}

const SWEEP_KEYS: [&str; 8] = [
    "integrands",
    "estimators",
    "epsilons",
    "seeds",
    "seed_base",
    "exact_readout",
    "output",
    "record_wall_time",
];
const TUNING_KEYS: [&str; 3] = ["shots_constant", "delta_safety", "qubit_cap"];

impl SweepConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config = Self::parse(&text)?;
        // relative output paths are taken relative to the config file
        if let (Some(out), Some(dir)) = (&config.output, path.parent()) {
            if out.is_relative() {
                config.output = Some(dir.join(out));
            }
        }
        Ok(config)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let ini = Ini::load_from_str_noescape(text)
            .map_err(|e| Error::Config(format!("malformed config: {e}")))?;
        let mut config = SweepConfig::default();
        let mut seen_sweep = false;

        for (section, props) in ini.iter() {
            let (allowed, name): (&[&str], _) = match section {
                Some("sweep") => {
                    seen_sweep = true;
                    (&SWEEP_KEYS, "sweep")
                }
                Some("tuning") => (&TUNING_KEYS, "tuning"),
                None if props.is_empty() => continue,
                None => return Err(Error::Config("keys outside any section".into())),
                Some(other) => return Err(Error::Config(format!("unknown section [{other}]"))),
            };
            for (key, value) in props.iter() {
                if !allowed.contains(&key) {
                    return Err(Error::Config(format!("unknown key `{key}` in [{name}]")));
                }
                config.apply(key, value.trim())?;
            }
        }
        if !seen_sweep {
            return Err(Error::Config("missing [sweep] section".into()));
        }
        config.validate()?;
        Ok(config)
    }

    fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "integrands" => {
                self.integrands = list(value).map(str::parse).collect::<Result<_>>()?;
            }
            "estimators" => self.estimators = EstimatorSpec::parse_list(value)?,
            "epsilons" => self.epsilons = list(value).map(parse_accuracy).collect::<Result<_>>()?,
            "seeds" => self.seeds = parse_seeds(value)?,
            "seed_base" => self.seed_base = number(key, value)?,
            "exact_readout" => {
                self.settings.readout = if flag(key, value)? {
                    Readout::Exact
                } else {
                    Readout::Sampled
                }
            }
            "output" => self.output = (!value.is_empty()).then(|| PathBuf::from(value)),
            "record_wall_time" => self.record_wall_time = flag(key, value)?,
            "shots_constant" => self.settings.shots_constant = number(key, value)?,
            "delta_safety" => self.settings.delta_safety = number(key, value)?,
            "qubit_cap" => self.settings.qubit_cap = number(key, value)?,
            _ => unreachable!("key checked by caller"),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(e) = self.epsilons.iter().find(|e| !(**e > 0.0 && **e < 0.5)) {
            return Err(Error::Config(format!("accuracy {e} outside (0, 1/2)")));
        }
        if self.settings.shots_constant.is_nan() || self.settings.shots_constant <= 0.0 {
            return Err(Error::Config("shots_constant must be positive".into()));
        }
        if self.settings.delta_safety.is_nan() || self.settings.delta_safety <= 0.0 {
            return Err(Error::Config("delta_safety must be positive".into()));
        }
        Ok(())
    }
}

fn list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("`{key}`: cannot parse `{value}`")))
}

fn flag(key: &str, value: &str) -> Result<bool> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(Error::Config(format!("`{key}`: expected a boolean, got `{value}`"))),
    }
}

/// A decimal number or a power of two written `2^-k`.
pub(crate) fn parse_accuracy(s: &str) -> Result<f64> {
    if let Some(exp) = s.strip_prefix("2^") {
        let k: i32 = exp
            .parse()
            .map_err(|_| Error::Config(format!("bad accuracy `{s}`")))?;
        return Ok(2f64.powi(k));
    }
    s.parse()
        .map_err(|_| Error::Config(format!("bad accuracy `{s}`")))
}

/// `1, 2, 5` or a half-open range `0..20`, or a mix.
fn parse_seeds(value: &str) -> Result<Vec<u64>> {
    let mut seeds = Vec::new();
    for item in list(value) {
        if let Some((a, b)) = item.split_once("..") {
            let a: u64 = number("seeds", a.trim())?;
            let b: u64 = number("seeds", b.trim())?;
            seeds.extend(a..b);
        } else {
            seeds.push(number("seeds", item)?);
        }
    }
    Ok(seeds)
}
