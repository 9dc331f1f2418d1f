//! Sweep configs, CSV output and power-law fits.

mod config;
mod csv;
mod demo;
mod fit;
mod sweep;

pub use self::csv::{emit_csv, emit_failures, read_csv, write_csv, CSV_HEADER};
pub use config::SweepConfig;
pub use demo::{demo_config, run_demo, DEMO_ACCURACY};
pub use fit::{fit_scaling, method_matches, ScalingFit};
pub use sweep::{cell_seed, run_sweep, CellFailure, SweepOutcome, SweepRecord};
