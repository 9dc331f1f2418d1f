//! Stochastic processes rewritten as grid integrands.
//!
//! A process `w_1, …, w_N` where each step is driven by an independent
//! uniform draw `r_i` becomes a function of `(r_1, …, r_N)`. Discretizing each
//! draw to `r_i = a_i / M_step` turns the process into an [`IntegrandOracle`]
//! over `{0, …, M_step-1}^N` whose mean is the expectation of the scaled
//! statistic raised to the configured power.
//!
//! Moments are taken of the *scaled* statistic `u = (v - lo) / (hi - lo)`.
//! Raw moments follow affinely: `E[v] = lo + (hi - lo) E[u]` and
//! `E[v^2] = lo^2 + 2 lo (hi - lo) E[u] + (hi - lo)^2 E[u^2]`.

use std::fmt;
use std::sync::Arc;

use super::grid::{GridDomain, IntegrandOracle, MAX_ENUMERATION_BITS};
use crate::error::{Error, Result};

/// Values within this distance outside `[0, 1]` are rounding noise and clamped.
const SCALE_SLACK: f64 = 1e-12;

pub type TransitionFn = dyn Fn(usize, &[f64], f64) -> f64 + Send + Sync;
pub type StatisticFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// Affine map of `[lo, hi]` onto `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineScale {
    lo: f64,
    hi: f64,
}

impl AffineScale {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::domain(format!("invalid scale range [{lo}, {hi}]")));
        }
        let scale = AffineScale { lo, hi };
        if scale.apply(lo) != 0.0 || scale.apply(hi) != 1.0 {
            return Err(Error::domain(format!(
                "scale [{lo}, {hi}] does not map its endpoints onto 0 and 1"
            )));
        }
        Ok(scale)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn apply(&self, v: f64) -> f64 {
        (v - self.lo) / (self.hi - self.lo)
    }
}

/// A discrete-time process driven by one uniform draw per step.
#[derive(Clone)]
pub struct StochasticProcessSpec {
    name: String,
    steps: u32,
    branching: usize,
    transition: Arc<TransitionFn>,
    statistic: Arc<StatisticFn>,
    scale: AffineScale,
    power: u32,
}

impl StochasticProcessSpec {
    /// `transition(i, &w[..i], r_i)` yields `w_i` (0-based `i`); `statistic`
    /// maps the whole path to a real in `scale`'s range.
    pub fn new<T, S>(
        steps: u32,
        branching: usize,
        transition: T,
        statistic: S,
        scale: AffineScale,
    ) -> Result<Self>
    where
        T: Fn(usize, &[f64], f64) -> f64 + Send + Sync + 'static,
        S: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        if steps == 0 {
            return Err(Error::domain("a process needs at least one step"));
        }
        if branching < 2 || !branching.is_power_of_two() {
            return Err(Error::domain(format!(
                "branch factor must be a power of two >= 2, got {branching}"
            )));
        }
        Ok(StochasticProcessSpec {
            name: "process".to_owned(),
            steps,
            branching,
            transition: Arc::new(transition),
            statistic: Arc::new(statistic),
            scale,
            power: 1,
        })
    }

    /// Fair ±1 walk from 0; statistic is the final position, scaled from
    /// `[-steps, steps]`.
    pub fn symmetric_walk(steps: u32) -> Result<Self> {
        let n = f64::from(steps);
        Ok(Self::new(
            steps,
            2,
            |_, prev, r| prev.last().copied().unwrap_or(0.0) + if r < 0.5 { -1.0 } else { 1.0 },
            |w| *w.last().expect("non-empty path"),
            AffineScale::new(-n, n)?,
        )?
        .with_name(format!("walk:{steps}")))
    }

    pub fn with_power(mut self, power: u32) -> Self {
        self.power = power.max(1);
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn steps(&self) -> u32 {
        self.steps
    }

    pub fn branching(&self) -> usize {
        self.branching
    }

    pub fn scale(&self) -> AffineScale {
        self.scale
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    /// Roll the path for the given draws.
    pub fn path(&self, draws: &[f64]) -> Vec<f64> {
        let mut w = Vec::with_capacity(draws.len());
        for (i, &r) in draws.iter().enumerate() {
            let next = (self.transition)(i, &w, r);
            w.push(next);
        }
        w
    }

    /// `scale(statistic(path))^p`, clamped when within rounding of `[0, 1]`.
    pub fn scaled_moment_term(&self, draws: &[f64]) -> f64 {
        let u = self.scale.apply((self.statistic)(&self.path(draws)));
        let u = if (-SCALE_SLACK..0.0).contains(&u) {
            0.0
        } else if u > 1.0 && u <= 1.0 + SCALE_SLACK {
            1.0
        } else {
            u
        };
        u.powi(self.power as i32)
    }
}

impl fmt::Debug for StochasticProcessSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StochasticProcessSpec")
            .field("name", &self.name)
            .field("steps", &self.steps)
            .field("branching", &self.branching)
            .field("scale", &self.scale)
            .field("power", &self.power)
            .finish()
    }
}

/// Grid oracle whose mean is the `p`-th moment of the scaled statistic.
pub fn make_stochastic_oracle(spec: &StochasticProcessSpec) -> Result<IntegrandOracle> {
    let bits = u64::from(spec.steps) * u64::from(spec.branching.trailing_zeros());
    if bits > u64::from(MAX_ENUMERATION_BITS) {
        return Err(Error::Capacity {
            what: "process path bits",
            requested: bits,
            limit: u64::from(MAX_ENUMERATION_BITS),
        });
    }
    let domain = GridDomain::new(spec.steps, spec.branching)?;
    let m = spec.branching as f64;
    let spec_owned = spec.clone();
    let name = if spec.power == 1 {
        spec.name.clone()
    } else {
        format!("{}^{}", spec.name, spec.power)
    };
    Ok(IntegrandOracle::from_fn(domain, move |a| {
        let draws: Vec<f64> = a.iter().map(|&ai| ai as f64 / m).collect();
        spec_owned.scaled_moment_term(&draws)
    })
    .with_name(name))
}
