use super::layout::QubitLayout;
use super::state::{RotationMode, StateVector, Target};
use crate::error::{Error, Result};
use crate::oracle::IntegrandOracle;

/// The unitary `U` that maps `|s⟩ = |0…0⟩` toward the target.
#[derive(Debug, Clone, Copy)]
pub enum Preparation<'a> {
    /// `W⁻¹ R W` with `R` rotating by `f - shift`. The amplitude of
    /// `|1⟩|0…0⟩` is then `mean(f) - shift`.
    GroverU {
        oracle: &'a IntegrandOracle,
        shift: f64,
    },
    /// `W` over a register of `qubits` qubits (the boolean domain), no ancilla.
    HadamardOnly { qubits: u32 },
    /// `R̂ W` with `R̂` rotating by `sqrt(f)`. The ancilla reads `|1⟩` with
    /// probability `mean(f)`.
    SqrtRot { oracle: &'a IntegrandOracle },
}

impl<'a> Preparation<'a> {
    /// System register (no counting qubits) this preparation acts on.
    pub fn system_layout(&self, cap: u32) -> Result<QubitLayout> {
        match *self {
            Preparation::GroverU { oracle, .. } | Preparation::SqrtRot { oracle } => {
                QubitLayout::with_cap(1, oracle.domain().total_bits(), 0, cap)
            }
            Preparation::HadamardOnly { qubits } => QubitLayout::with_cap(0, qubits, 0, cap),
        }
    }

    /// Oracle queries charged by one application of `U` or `U⁻¹`.
    pub fn queries_per_application(&self) -> u64 {
        match self {
            Preparation::GroverU { .. } | Preparation::SqrtRot { .. } => 1,
            Preparation::HadamardOnly { .. } => 0,
        }
    }

    /// The target the chart pairs with this preparation, when it needs no
    /// extra oracle: `|1⟩|0…0⟩` for `W⁻¹RW`, the ancilla-`|1⟩` subspace for `R̂W`.
    pub fn natural_target(&self) -> Option<Target<'a>> {
        match self {
            Preparation::GroverU { .. } => Some(Target::Basis(1)),
            Preparation::SqrtRot { .. } => Some(Target::AncillaOne),
            Preparation::HadamardOnly { .. } => None,
        }
    }

    fn check(&self, state: &StateVector) -> Result<()> {
        let want = self.system_layout(state.layout().cap())?;
        let have = state.layout();
        if want.ancilla_count() != have.ancilla_count()
            || want.function_qubits() != have.function_qubits()
        {
            return Err(Error::domain(format!(
                "preparation needs {} ancilla + {} function qubits, register has {} + {}",
                want.ancilla_count(),
                want.function_qubits(),
                have.ancilla_count(),
                have.function_qubits()
            )));
        }
        Ok(())
    }

    /// Apply `U` in place.
    pub fn apply(&self, state: &mut StateVector) -> Result<()> {
        self.check(state)?;
        let function = state.layout().function_range();
        match *self {
            Preparation::GroverU { oracle, shift } => {
                state.apply_walsh_hadamard(function.clone())?;
                state.apply_oracle_rotation(oracle, RotationMode::Shifted(shift))?;
                state.apply_walsh_hadamard(function)
            }
            Preparation::HadamardOnly { .. } => state.apply_walsh_hadamard(function),
            Preparation::SqrtRot { oracle } => {
                state.apply_walsh_hadamard(function)?;
                state.apply_oracle_rotation(oracle, RotationMode::Sqrt)
            }
        }
    }

    /// Apply `U⁻¹` in place (constituent inverses in reverse order).
    pub fn apply_inverse(&self, state: &mut StateVector) -> Result<()> {
        self.check(state)?;
        let function = state.layout().function_range();
        match *self {
            Preparation::GroverU { oracle, shift } => {
                state.apply_walsh_hadamard(function.clone())?;
                state.apply_oracle_rotation_inverse(oracle, RotationMode::Shifted(shift))?;
                state.apply_walsh_hadamard(function)
            }
            Preparation::HadamardOnly { .. } => state.apply_walsh_hadamard(function),
            Preparation::SqrtRot { oracle } => {
                state.apply_oracle_rotation_inverse(oracle, RotationMode::Sqrt)?;
                state.apply_walsh_hadamard(function)
            }
        }
    }
}

/// `U|s⟩` on the given layout.
pub fn prepare(prep: &Preparation<'_>, layout: QubitLayout) -> Result<StateVector> {
    let mut state = StateVector::zero(layout)?;
    prep.apply(&mut state)?;
    Ok(state)
}

/// One application of `G = -I_s U⁻¹ I_t U`.
pub fn grover_iterate(
    state: &mut StateVector,
    prep: &Preparation<'_>,
    target: Target<'_>,
) -> Result<()> {
    prep.apply(state)?;
    state.invert_phase_predicate(target)?;
    prep.apply_inverse(state)?;
    state.invert_phase_index(0)?;
    state.negate();
    Ok(())
}

/// Oracle queries charged by one [`grover_iterate`].
pub fn queries_per_iterate(prep: &Preparation<'_>, target: Target<'_>) -> u64 {
    2 * prep.queries_per_application() + u64::from(matches!(target, Target::Marked(_)))
}

/// `U G^n |s⟩`: the state whose target probability is `sin²((2n+1)θ)`.
pub fn amplified_state(
    prep: &Preparation<'_>,
    target: Target<'_>,
    iterations: u64,
    cap: u32,
) -> Result<StateVector> {
    let mut state = StateVector::zero(prep.system_layout(cap)?)?;
    for _ in 0..iterations {
        grover_iterate(&mut state, prep, target)?;
    }
    prep.apply(&mut state)?;
    Ok(state)
}

/// `A^{-1/2} Σ_j |j⟩ G^j |s⟩` with `A = 2^counting_qubits`.
///
/// Built by cumulative application of `G` to the system register, so the
/// whole state costs `A - 1` iterates.
pub fn build_counting_state(
    prep: &Preparation<'_>,
    target: Target<'_>,
    counting_qubits: u32,
    cap: u32,
) -> Result<StateVector> {
    if counting_qubits == 0 {
        return Err(Error::domain("counting register needs at least one qubit"));
    }
    let system = prep.system_layout(cap)?;
    let layout = system.with_counting(counting_qubits)?;
    let mut full = StateVector::zero(layout)?;
    let mut walker = StateVector::zero(system)?;
    let blocks = 1usize << counting_qubits;
    let stride = system.system_dimension();
    let norm = 1.0 / (blocks as f64).sqrt();
    {
        let amps = full.amplitudes_mut();
        for j in 0..blocks {
            for (dst, src) in amps[j * stride..(j + 1) * stride]
                .iter_mut()
                .zip(walker.amplitudes())
            {
                *dst = src * norm;
            }
            if j + 1 < blocks {
                grover_iterate(&mut walker, prep, target)?;
            }
        }
    }
    Ok(full)
}
