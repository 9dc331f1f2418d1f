//! Integrand oracles, the boolean extension, stochastic-process adapters and
//! the classical baselines.

mod boolean;
mod classical;
mod grid;
mod registry;
mod stochastic;

pub use boolean::BooleanOracle;
pub use classical::{exact_estimate, monte_carlo_estimate, true_mean};
pub use grid::{GridDomain, IntegrandOracle, MAX_ENUMERATION_BITS};
pub use registry::{IntegrandKind, IntegrandSpec, BUILTIN_SET};
pub use stochastic::{make_stochastic_oracle, AffineScale, StochasticProcessSpec};

/// `f(a) = g(a / M)` on the given grid.
pub fn make_grid_oracle<G>(g: G, domain: GridDomain) -> IntegrandOracle
where
    G: Fn(&[f64]) -> f64 + Send + Sync + 'static,
{
    IntegrandOracle::from_continuous(g, domain)
}

/// Boolean extension with `Q = levels`.
pub fn make_boolean_extension(
    oracle: &IntegrandOracle,
    levels: usize,
) -> crate::Result<BooleanOracle<'_>> {
    BooleanOracle::new(oracle, levels)
}
