use std::ops::Range;

use crate::error::{Error, Result};

/// Default hard cap on the simulated register width (2^26 amplitudes, 1 GiB).
pub const DEFAULT_QUBIT_CAP: u32 = 26;

/// Qubit assignment of a register.
///
/// Bit order within a basis index, least significant first: the ancilla
/// (when present), then the function register, then the counting register.
/// The ancilla and function qubits together form the *system* register; a
/// basis index splits as `counting << system_qubits | system`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QubitLayout {
    ancilla: u32,
    function: u32,
    counting: u32,
    cap: u32,
}

impl QubitLayout {
    pub fn new(ancilla: u32, function: u32, counting: u32) -> Result<Self> {
        Self::with_cap(ancilla, function, counting, DEFAULT_QUBIT_CAP)
    }

    pub fn with_cap(ancilla: u32, function: u32, counting: u32, cap: u32) -> Result<Self> {
        if ancilla > 1 {
            return Err(Error::domain(format!(
                "at most one ancilla qubit is supported, got {ancilla}"
            )));
        }
        if function == 0 {
            return Err(Error::domain("the function register needs at least one qubit"));
        }
        let layout = QubitLayout {
            ancilla,
            function,
            counting,
            cap,
        };
        if layout.total() > cap {
            return Err(Error::Capacity {
                what: "qubits",
                requested: u64::from(layout.total()),
                limit: u64::from(cap),
            });
        }
        Ok(layout)
    }

    /// Same system register with a counting register of `counting` qubits.
    pub fn with_counting(&self, counting: u32) -> Result<Self> {
        Self::with_cap(self.ancilla, self.function, counting, self.cap)
    }

    pub fn ancilla_count(&self) -> u32 {
        self.ancilla
    }

    pub fn function_qubits(&self) -> u32 {
        self.function
    }

    pub fn counting_qubits(&self) -> u32 {
        self.counting
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn total(&self) -> u32 {
        self.ancilla + self.function + self.counting
    }

    pub fn system_qubits(&self) -> u32 {
        self.ancilla + self.function
    }

    pub fn dimension(&self) -> usize {
        1usize << self.total()
    }

    pub fn system_dimension(&self) -> usize {
        1usize << self.system_qubits()
    }

    pub fn function_range(&self) -> Range<u32> {
        self.ancilla..self.ancilla + self.function
    }

    pub fn counting_range(&self) -> Range<u32> {
        self.system_qubits()..self.total()
    }

    /// Function-register value encoded in a basis index.
    #[inline]
    pub fn function_value(&self, index: usize) -> usize {
        (index >> self.ancilla) & ((1usize << self.function) - 1)
    }

    #[inline]
    pub fn system_part(&self, index: usize) -> usize {
        index & (self.system_dimension() - 1)
    }

    #[inline]
    pub fn ancilla_set(&self, index: usize) -> bool {
        self.ancilla == 1 && index & 1 == 1
    }
}
