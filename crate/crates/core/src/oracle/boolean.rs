use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use super::grid::{IntegrandOracle, MAX_ENUMERATION_BITS};
use crate::error::{Error, Result};

/// The boolean extension `b(a, q)` of an integrand, `q ∈ {0, …, Q-1}`.
///
/// `b(a, q) = 1` iff `q < round(f(a) * Q)`, so for each grid point the number
/// of true `q` is within 1/2 of `f(a) * Q`. A domain index stores the grid
/// point in its low `d log2 M` bits and `q` above them.
#[derive(Debug)]
pub struct BooleanOracle<'a> {
    base: &'a IntegrandOracle,
    levels: usize,
    marks: OnceLock<Arc<[bool]>>,
    queries: AtomicU64,
    evaluations: AtomicU64,
}

impl<'a> BooleanOracle<'a> {
    pub fn new(base: &'a IntegrandOracle, levels: usize) -> Result<Self> {
        if levels < 2 || !levels.is_power_of_two() {
            return Err(Error::domain(format!(
                "Q must be a power of two >= 2, got {levels}"
            )));
        }
        let bits = base.domain().total_bits() + levels.trailing_zeros();
        if bits > 63 {
            return Err(Error::Capacity {
                what: "boolean domain bits",
                requested: u64::from(bits),
                limit: 63,
            });
        }
        Ok(BooleanOracle {
            base,
            levels,
            marks: OnceLock::new(),
            queries: AtomicU64::new(0),
            evaluations: AtomicU64::new(0),
        })
    }

    pub fn base(&self) -> &'a IntegrandOracle {
        self.base
    }

    /// `Q`.
    pub fn levels(&self) -> usize {
        self.levels
    }

    /// `d log2 M + log2 Q`.
    pub fn domain_bits(&self) -> u32 {
        self.base.domain().total_bits() + self.levels.trailing_zeros()
    }

    /// `M^d * Q`.
    pub fn domain_size(&self) -> u64 {
        1u64 << self.domain_bits()
    }

    pub fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations.load(Ordering::Relaxed)
    }

    pub fn record_queries(&self, n: u64) {
        self.queries.fetch_add(n, Ordering::Relaxed);
    }

    /// Number of `q` with `b(a, q) = 1` for a given base value.
    #[inline]
    pub fn true_count_for(&self, value: f64) -> usize {
        ((value * self.levels as f64).round() as usize).min(self.levels)
    }

    fn split(&self, index: usize) -> (usize, usize) {
        let bits = self.base.domain().total_bits();
        (index & ((1usize << bits) - 1), index >> bits)
    }

    pub fn evaluate(&self, index: usize) -> Result<bool> {
        if index as u64 >= self.domain_size() {
            return Err(Error::domain(format!(
                "boolean index {index} outside domain of size {}",
                self.domain_size()
            )));
        }
        if let Some(marks) = self.marks.get() {
            return Ok(marks[index]);
        }
        self.evaluations.fetch_add(1, Ordering::Relaxed);
        let (point, q) = self.split(index);
        Ok(q < self.true_count_for(self.base.evaluate(point)?))
    }

    /// One classical query of `b`.
    pub fn query(&self, index: usize) -> Result<bool> {
        self.record_queries(1);
        self.evaluate(index)
    }

    /// Marked-set table over the whole domain. Charges no queries.
    pub fn marks(&self) -> Result<Arc<[bool]>> {
        if let Some(marks) = self.marks.get() {
            return Ok(Arc::clone(marks));
        }
        if self.domain_bits() > MAX_ENUMERATION_BITS {
            return Err(Error::Capacity {
                what: "boolean domain points",
                requested: self.domain_size(),
                limit: 1 << MAX_ENUMERATION_BITS,
            });
        }
        let values = self.base.table()?;
        let counts: Vec<usize> = values.iter().map(|&v| self.true_count_for(v)).collect();
        let n = self.domain_size() as usize;
        let marks: Arc<[bool]> = (0..n)
            .map(|i| {
                let (point, q) = self.split(i);
                q < counts[point]
            })
            .collect::<Vec<_>>()
            .into();
        self.evaluations.fetch_add(n as u64, Ordering::Relaxed);
        let _ = self.marks.set(Arc::clone(&marks));
        Ok(marks)
    }

    /// Exact number of solutions `r` by querying every domain point.
    pub fn count_true(&self) -> Result<u64> {
        let marks = self.marks()?;
        self.record_queries(marks.len() as u64);
        Ok(marks.iter().filter(|&&m| m).count() as u64)
    }
}
