//! Named built-in integrands addressable from configs and the CLI.
//!
//! Grammar: `name[:param…][@DxM]`, where `@DxM` overrides the grid
//! (D dimensions, M points per axis).
//!
//! | spec                      | g(x)                               | default grid |
//! |---------------------------|------------------------------------|--------------|
//! | `const:c`                 | `c`                                | `@1x4`       |
//! | `linear`                  | mean of the `x_i`                  | `@1x16`      |
//! | `product`                 | product of the `x_i`               | `@2x4`       |
//! | `gaussian-bump[:sigma]`   | `exp(-|x - 1/2|² / 2σ²)`, σ = 0.25 | `@2x4`       |
//! | `walk:steps[:p]`          | p-th moment of a fair ±1 walk's scaled final position | `steps x 2` (fixed) |

use std::fmt;
use std::str::FromStr;

use super::grid::{GridDomain, IntegrandOracle};
use super::stochastic::{make_stochastic_oracle, StochasticProcessSpec};
use crate::error::{Error, Result};

/// The set used by `demo` and the scaling checks. Every member has 16 grid
/// points so the boolean extension stays small at fine resolution.
pub const BUILTIN_SET: [&str; 5] = [
    "linear@1x16",
    "product@2x4",
    "gaussian-bump:0.25@2x4",
    "walk:4",
    "const:0.3@1x16",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IntegrandKind {
    Const(f64),
    Linear,
    Product,
    GaussianBump { sigma: f64 },
    Walk { steps: u32, power: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrandSpec {
    kind: IntegrandKind,
    domain: GridDomain,
}

impl IntegrandSpec {
    pub fn kind(&self) -> IntegrandKind {
        self.kind
    }

    pub fn domain(&self) -> GridDomain {
        self.domain
    }

    pub fn build(&self) -> Result<IntegrandOracle> {
        let name = self.to_string();
        let oracle = match self.kind {
            IntegrandKind::Const(c) => IntegrandOracle::from_continuous(move |_| c, self.domain),
            IntegrandKind::Linear => IntegrandOracle::from_continuous(
                |x| x.iter().sum::<f64>() / x.len() as f64,
                self.domain,
            ),
            IntegrandKind::Product => {
                IntegrandOracle::from_continuous(|x| x.iter().product(), self.domain)
            }
            IntegrandKind::GaussianBump { sigma } => {
                let denom = 2.0 * sigma * sigma;
                IntegrandOracle::from_continuous(
                    move |x| (-x.iter().map(|xi| (xi - 0.5).powi(2)).sum::<f64>() / denom).exp(),
                    self.domain,
                )
            }
            IntegrandKind::Walk { steps, power } => make_stochastic_oracle(
                &StochasticProcessSpec::symmetric_walk(steps)?.with_power(power),
            )?,
        };
        Ok(oracle.with_name(name))
    }
}

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Config(format!("bad {what} `{s}`")))
}

fn parse_u32(s: &str, what: &str) -> Result<u32> {
    s.trim()
        .parse()
        .map_err(|_| Error::Config(format!("bad {what} `{s}`")))
}

impl FromStr for IntegrandSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, grid) = match s.split_once('@') {
            Some((h, g)) => (h, Some(g)),
            None => (s, None),
        };
        let mut parts = head.split(':');
        let name = parts.next().unwrap_or_default();
        let params: Vec<&str> = parts.collect();
        let arity = |max: usize| -> Result<()> {
            if params.len() > max {
                Err(Error::Config(format!("too many parameters in `{s}`")))
            } else {
                Ok(())
            }
        };

        let (kind, default_grid) = match name {
            "const" => {
                arity(1)?;
                let c = parse_f64(
                    params
                        .first()
                        .ok_or_else(|| Error::Config("const needs a value: const:c".into()))?,
                    "constant",
                )?;
                if !(0.0..=1.0).contains(&c) {
                    return Err(Error::Config(format!("constant {c} outside [0, 1]")));
                }
                (IntegrandKind::Const(c), (1, 4))
            }
            "linear" => {
                arity(0)?;
                (IntegrandKind::Linear, (1, 16))
            }
            "product" => {
                arity(0)?;
                (IntegrandKind::Product, (2, 4))
            }
            "gaussian-bump" => {
                arity(1)?;
                let sigma = match params.first() {
                    Some(p) => parse_f64(p, "sigma")?,
                    None => 0.25,
                };
                if !(sigma > 0.0 && sigma.is_finite()) {
                    return Err(Error::Config(format!("sigma must be positive, got {sigma}")));
                }
                (IntegrandKind::GaussianBump { sigma }, (2, 4))
            }
            "walk" => {
                arity(2)?;
                if grid.is_some() {
                    return Err(Error::Config(
                        "walk grids are fixed by the step count; drop the @DxM suffix".into(),
                    ));
                }
                let steps = parse_u32(
                    params
                        .first()
                        .ok_or_else(|| Error::Config("walk needs a step count: walk:steps".into()))?,
                    "step count",
                )?;
                let power = match params.get(1) {
                    Some(p) => parse_u32(p, "moment power")?,
                    None => 1,
                };
                if steps == 0 || power == 0 {
                    return Err(Error::Config(format!("walk parameters must be positive in `{s}`")));
                }
                (IntegrandKind::Walk { steps, power }, (steps, 2))
            }
            other => return Err(Error::Config(format!("unknown integrand `{other}`"))),
        };

        let (dims, m) = match grid {
            None => default_grid,
            Some(g) => {
                let (d, m) = g
                    .split_once('x')
                    .ok_or_else(|| Error::Config(format!("grid must look like DxM, got `{g}`")))?;
                (parse_u32(d, "dimension")?, parse_u32(m, "points per axis")?)
            }
        };
        let domain =
            GridDomain::new(dims, m as usize).map_err(|e| Error::Config(format!("`{s}`: {e}")))?;
        Ok(IntegrandSpec { kind, domain })
    }
}

impl fmt::Display for IntegrandSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            IntegrandKind::Const(c) => write!(f, "const:{c}@{}", self.domain),
            IntegrandKind::Linear => write!(f, "linear@{}", self.domain),
            IntegrandKind::Product => write!(f, "product@{}", self.domain),
            IntegrandKind::GaussianBump { sigma } => {
                write!(f, "gaussian-bump:{sigma}@{}", self.domain)
            }
            IntegrandKind::Walk { steps, power: 1 } => write!(f, "walk:{steps}"),
            IntegrandKind::Walk { steps, power } => write!(f, "walk:{steps}:{power}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::true_mean;

    #[test]
    fn parses_defaults() {
        let s: IntegrandSpec = "linear".parse().unwrap();
        assert_eq!(s.to_string(), "linear@1x16");
        let s: IntegrandSpec = "gaussian-bump".parse().unwrap();
        assert_eq!(s.to_string(), "gaussian-bump:0.25@2x4");
        let s: IntegrandSpec = "walk:6:2".parse().unwrap();
        assert_eq!(s.domain(), GridDomain::new(6, 2).unwrap());
    }

    #[test]
    fn canonical_names_reparse() {
        for name in BUILTIN_SET {
            let spec: IntegrandSpec = name.parse().unwrap();
            assert_eq!(spec.to_string(), name);
            assert_eq!(spec.domain().size(), 16);
        }
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["nope", "const", "const:2", "linear:3", "product@2x3", "walk:4@4x2", "walk:0"] {
            assert!(bad.parse::<IntegrandSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn walk_moments() {
        let w1 = "walk:6".parse::<IntegrandSpec>().unwrap().build().unwrap();
        assert!((true_mean(&w1).unwrap() - 0.5).abs() < 1e-12);
        let w2 = "walk:6:2".parse::<IntegrandSpec>().unwrap().build().unwrap();
        assert!((true_mean(&w2).unwrap() - 42.0 / 144.0).abs() < 1e-12);
    }

    #[test]
    fn builtins_stay_in_range() {
        for name in BUILTIN_SET {
            let o = name.parse::<IntegrandSpec>().unwrap().build().unwrap();
            assert!(o.table().is_ok(), "{name}");
        }
    }
}
