use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::ops::Range;

use num_complex::Complex64;
use rand::distr::{weighted::WeightedIndex, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustfft::{FftDirection, FftPlanner};

use super::layout::QubitLayout;
use crate::error::{Error, Result};
use crate::oracle::{BooleanOracle, IntegrandOracle};

/// Value the ancilla rotation encodes for each function basis state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RotationMode {
    /// `f(a) - shift`, with `shift ∈ [0, 1]`.
    Shifted(f64),
    /// `sqrt(f(a))`. Carries no shift: estimators built on it cannot subtract
    /// a running estimate.
    Sqrt,
}

/// A set of system-register basis states.
///
/// Predicates see the system part of a basis index only, so they apply
/// blockwise when a counting register is present.
#[derive(Clone, Copy)]
pub enum Target<'a> {
    /// A single basis state.
    Basis(usize),
    /// Every state with the ancilla in `|1⟩`.
    AncillaOne,
    /// States whose function register is a solution of `b`.
    Marked(&'a BooleanOracle<'a>),
    Predicate(&'a (dyn Fn(usize) -> bool + Sync)),
}

impl std::fmt::Debug for Target<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Target::Basis(i) => write!(f, "Basis({i})"),
            Target::AncillaOne => f.write_str("AncillaOne"),
            Target::Marked(b) => write!(f, "Marked(Q={})", b.levels()),
            Target::Predicate(_) => f.write_str("Predicate(..)"),
        }
    }
}

/// Dense complex amplitudes over a [`QubitLayout`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    layout: QubitLayout,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(layout: QubitLayout) -> Result<Self> {
        if layout.total() > layout.cap() {
            return Err(Error::Capacity {
                what: "qubits",
                requested: u64::from(layout.total()),
                limit: u64::from(layout.cap()),
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); layout.dimension()];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { layout, amps })
    }

    /// Wrap explicit amplitudes; they must match the layout's dimension.
    pub fn from_amplitudes(layout: QubitLayout, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != layout.dimension() {
            return Err(Error::domain(format!(
                "{} amplitudes given for a {}-qubit layout",
                amps.len(),
                layout.total()
            )));
        }
        Ok(StateVector { layout, amps })
    }

    pub fn layout(&self) -> QubitLayout {
        self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.amps.iter().all(|a| a.re.is_finite() && a.im.is_finite())
    }

    /// Hadamard on every qubit in `qubits`.
    pub fn apply_walsh_hadamard(&mut self, qubits: Range<u32>) -> Result<()> {
        if qubits.end > self.layout.total() || qubits.start > qubits.end {
            return Err(Error::domain(format!(
                "qubit range {qubits:?} outside a {}-qubit register",
                self.layout.total()
            )));
        }
        for q in qubits {
            let stride = 1usize << q;
            for block in self.amps.chunks_exact_mut(stride << 1) {
                let (lo, hi) = block.split_at_mut(stride);
                for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (x, y) = (*a, *b);
                    *a = (x + y) * FRAC_1_SQRT_2;
                    *b = (x - y) * FRAC_1_SQRT_2;
                }
            }
        }
        Ok(())
    }

    /// Per-function-state rotation values `v(a)`; charges one query.
    fn rotation_values(&self, oracle: &IntegrandOracle, mode: RotationMode) -> Result<Vec<f64>> {
        if self.layout.ancilla_count() != 1 {
            return Err(Error::domain("oracle rotation needs an ancilla qubit"));
        }
        let domain = oracle.domain();
        if domain.total_bits() != self.layout.function_qubits() {
            return Err(Error::domain(format!(
                "oracle grid {domain} needs {} function qubits, layout has {}",
                domain.total_bits(),
                self.layout.function_qubits()
            )));
        }
        if let RotationMode::Shifted(e) = mode {
            if !(0.0..=1.0).contains(&e) {
                return Err(Error::domain(format!("rotation shift {e} outside [0, 1]")));
            }
        }
        let table = oracle.table()?;
        oracle.record_queries(1);
        table
            .iter()
            .enumerate()
            .map(|(a, &f)| {
                let v = match mode {
                    RotationMode::Shifted(e) => f - e,
                    RotationMode::Sqrt => f.sqrt(),
                };
                if v.abs() > 1.0 || !v.is_finite() {
                    Err(Error::domain(format!(
                        "rotation value {v} at grid point {:?} outside [-1, 1]",
                        domain.coords(a)
                    )))
                } else {
                    Ok(v)
                }
            })
            .collect()
    }

    fn rotate_ancilla(&mut self, values: &[f64], inverse: bool) {
        let layout = self.layout;
        for (pair_index, pair) in self.amps.chunks_exact_mut(2).enumerate() {
            let v = values[layout.function_value(pair_index << 1)];
            let v = if inverse { -v } else { v };
            let c = (1.0 - v * v).sqrt();
            let (x0, x1) = (pair[0], pair[1]);
            pair[0] = x0 * c - x1 * v;
            pair[1] = x0 * v + x1 * c;
        }
    }

    /// Ancilla rotation `|0⟩|a⟩ ↦ sqrt(1 - v²)|0⟩|a⟩ + v|1⟩|a⟩`, extended to
    /// the real rotation `[[c, -v], [v, c]]` on each ancilla pair. One oracle
    /// query per invocation.
    pub fn apply_oracle_rotation(
        &mut self,
        oracle: &IntegrandOracle,
        mode: RotationMode,
    ) -> Result<()> {
        let values = self.rotation_values(oracle, mode)?;
        self.rotate_ancilla(&values, false);
        Ok(())
    }

    /// Inverse of [`Self::apply_oracle_rotation`]. Also one query.
    pub fn apply_oracle_rotation_inverse(
        &mut self,
        oracle: &IntegrandOracle,
        mode: RotationMode,
    ) -> Result<()> {
        let values = self.rotation_values(oracle, mode)?;
        self.rotate_ancilla(&values, true);
        Ok(())
    }

    pub fn invert_phase_index(&mut self, index: usize) -> Result<()> {
        let amp = self.amps.get_mut(index).ok_or_else(|| {
            Error::domain(format!("basis index {index} outside register of size {}", self.layout.dimension()))
        })?;
        *amp = -*amp;
        Ok(())
    }

    /// Negate every amplitude whose system part lies in `target`.
    ///
    /// A [`Target::Marked`] inversion is one query of the boolean oracle.
    pub fn invert_phase_predicate(&mut self, target: Target<'_>) -> Result<()> {
        let layout = self.layout;
        match target {
            Target::Basis(i) => {
                if i >= layout.system_dimension() {
                    return Err(Error::domain(format!(
                        "target index {i} outside system register of size {}",
                        layout.system_dimension()
                    )));
                }
                let stride = layout.system_dimension();
                for block in self.amps.chunks_exact_mut(stride) {
                    block[i] = -block[i];
                }
            }
            Target::AncillaOne => {
                if layout.ancilla_count() != 1 {
                    return Err(Error::domain("ancilla target on a register without ancilla"));
                }
                for pair in self.amps.chunks_exact_mut(2) {
                    pair[1] = -pair[1];
                }
            }
            Target::Marked(b) => {
                if u64::from(layout.function_qubits()) != u64::from(b.domain_bits()) {
                    return Err(Error::domain(format!(
                        "boolean domain needs {} function qubits, layout has {}",
                        b.domain_bits(),
                        layout.function_qubits()
                    )));
                }
                let marks = b.marks()?;
                b.record_queries(1);
                for (i, amp) in self.amps.iter_mut().enumerate() {
                    if marks[layout.function_value(i)] {
                        *amp = -*amp;
                    }
                }
            }
            Target::Predicate(p) => {
                for (i, amp) in self.amps.iter_mut().enumerate() {
                    if p(layout.system_part(i)) {
                        *amp = -*amp;
                    }
                }
            }
        }
        Ok(())
    }

    /// Multiply the whole state by -1.
    pub fn negate(&mut self) {
        for a in &mut self.amps {
            *a = -*a;
        }
    }

    /// Whether a full basis index falls in `target` (reads marks without
    /// charging a query).
    pub fn in_target(&self, index: usize, target: Target<'_>) -> Result<bool> {
        let layout = self.layout;
        Ok(match target {
            Target::Basis(i) => layout.system_part(index) == i,
            Target::AncillaOne => layout.ancilla_set(index),
            Target::Marked(b) => b.marks()?[layout.function_value(index)],
            Target::Predicate(p) => p(layout.system_part(index)),
        })
    }

    /// Exact probability that a measurement lands in `target`.
    pub fn probability_of_target(&self, target: Target<'_>) -> Result<f64> {
        let layout = self.layout;
        Ok(match target {
            Target::Basis(i) => {
                let stride = layout.system_dimension();
                self.amps
                    .chunks_exact(stride)
                    .map(|block| block.get(i).map_or(0.0, |a| a.norm_sqr()))
                    .sum()
            }
            Target::AncillaOne => {
                if layout.ancilla_count() == 1 {
                    self.amps.chunks_exact(2).map(|p| p[1].norm_sqr()).sum()
                } else {
                    0.0
                }
            }
            Target::Marked(b) => {
                let marks = b.marks()?;
                self.amps
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| marks[layout.function_value(*i)])
                    .map(|(_, a)| a.norm_sqr())
                    .sum()
            }
            Target::Predicate(p) => self.probability_of(|i| p(layout.system_part(i))),
        })
    }

    /// `Σ |amp|²` over full basis indices satisfying `event`.
    pub fn probability_of<F: Fn(usize) -> bool>(&self, event: F) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| event(*i))
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// `|amp|²` summed over the system register, indexed by counting value.
    pub fn counting_distribution(&self) -> Vec<f64> {
        let stride = self.layout.system_dimension();
        self.amps
            .chunks_exact(stride)
            .map(|block| block.iter().map(|a| a.norm_sqr()).sum())
            .collect()
    }

    /// `shots` seeded draws from the Born distribution, as a histogram.
    pub fn sample_measurements(&self, shots: u64, seed: u64) -> Result<BTreeMap<usize, u64>> {
        if shots == 0 {
            return Err(Error::domain("need at least one shot"));
        }
        let weights: Vec<f64> = self.amps.iter().map(|a| a.norm_sqr()).collect();
        let dist = WeightedIndex::new(&weights)
            .map_err(|e| Error::domain(format!("cannot sample from state: {e}")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut histogram = BTreeMap::new();
        for _ in 0..shots {
            *histogram.entry(dist.sample(&mut rng)).or_insert(0) += 1;
        }
        Ok(histogram)
    }

    /// Unitary DFT `|j⟩ ↦ A^{-1/2} Σ_m e^{2πi jm/A} |m⟩` on the counting register.
    pub fn dft_counting_register(&mut self) -> Result<()> {
        self.counting_transform(FftDirection::Inverse)
    }

    pub fn inverse_dft_counting_register(&mut self) -> Result<()> {
        self.counting_transform(FftDirection::Forward)
    }

    // rustfft's Inverse direction carries the positive exponent.
    fn counting_transform(&mut self, direction: FftDirection) -> Result<()> {
        let counting = self.layout.counting_qubits();
        if counting == 0 {
            return Err(Error::domain("register has no counting qubits"));
        }
        let size = 1usize << counting;
        let stride = self.layout.system_dimension();
        let fft = FftPlanner::new().plan_fft(size, direction);
        let norm = 1.0 / (size as f64).sqrt();

        // Gather a batch of columns (fixed system index) into contiguous rows,
        // transform them together, scatter back.
        const BATCH: usize = 64;
        let batch = BATCH.min(stride);
        let mut buffer = vec![Complex64::new(0.0, 0.0); batch * size];
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        for first in (0..stride).step_by(batch) {
            let width = batch.min(stride - first);
            for j in 0..size {
                let row = &self.amps[j * stride + first..j * stride + first + width];
                for (c, &a) in row.iter().enumerate() {
                    buffer[c * size + j] = a;
                }
            }
            fft.process_with_scratch(&mut buffer[..width * size], &mut scratch);
            for j in 0..size {
                let row = &mut self.amps[j * stride + first..j * stride + first + width];
                for (c, a) in row.iter_mut().enumerate() {
                    *a = buffer[c * size + j] * norm;
                }
            }
        }
        Ok(())
    }
}
