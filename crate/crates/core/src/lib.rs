//! Quantum mean estimation and quantum counting for numerical integration,
//! simulated on a dense statevector, next to the classical deterministic and
//! Monte Carlo baselines.
//!
//! * [`statevector`]: the simulated register and the unitaries the
//!   estimators are built from.
//! * [`oracle`]: grid integrands, the boolean extension, stochastic-process
//!   adapters, the classical baselines and the named integrand registry.
//! * [`estimators`]: the six quantum estimators, the iterated-estimates
//!   driver and a tag vocabulary to dispatch them.
//! * [`harness`]: sweep configs, CSV output and power-law fits.

pub mod error;
pub mod estimate;
pub mod estimators;
pub mod harness;
pub mod oracle;
pub mod statevector;

pub use error::{Error, Result};
pub use estimate::{Estimate, Method};
