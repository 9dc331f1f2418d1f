//! Dense statevector simulation of the handful of unitaries the estimators
//! need: Walsh–Hadamard, oracle-conditioned ancilla rotations, phase
//! inversions, the Grover iterate and a Fourier transform on a counting
//! register.

mod layout;
mod prepare;
mod state;

pub use layout::{QubitLayout, DEFAULT_QUBIT_CAP};
pub use prepare::{
    amplified_state, build_counting_state, grover_iterate, prepare, queries_per_iterate,
    Preparation,
};
pub use state::{RotationMode, StateVector, Target};
