use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Largest grid (or boolean domain) that may be swept exhaustively.
pub const MAX_ENUMERATION_BITS: u32 = 25;

/// The grid `{0, …, M-1}^d`, with sample points `a_i / M`.
///
/// A flat point index stores axis 0 in its lowest `log2 M` bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridDomain {
    dims: u32,
    points_per_axis: usize,
}

impl GridDomain {
    pub fn new(dims: u32, points_per_axis: usize) -> Result<Self> {
        if dims == 0 {
            return Err(Error::domain("grid needs at least one dimension"));
        }
        if points_per_axis < 2 || !points_per_axis.is_power_of_two() {
            return Err(Error::domain(format!(
                "points per axis must be a power of two >= 2, got {points_per_axis}"
            )));
        }
        let bits = u64::from(dims) * u64::from(points_per_axis.trailing_zeros());
        if bits > 63 {
            return Err(Error::Capacity {
                what: "grid index bits",
                requested: bits,
                limit: 63,
            });
        }
        Ok(GridDomain {
            dims,
            points_per_axis,
        })
    }

    pub fn dims(&self) -> u32 {
        self.dims
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    pub fn bits_per_axis(&self) -> u32 {
        self.points_per_axis.trailing_zeros()
    }

    /// `d * log2 M`, the width of the function register.
    pub fn total_bits(&self) -> u32 {
        self.dims * self.bits_per_axis()
    }

    /// `M^d`.
    pub fn size(&self) -> u64 {
        1u64 << self.total_bits()
    }

    pub fn coords(&self, index: usize) -> Vec<usize> {
        let bits = self.bits_per_axis();
        let mask = self.points_per_axis - 1;
        (0..self.dims)
            .map(|axis| (index >> (axis * bits)) & mask)
            .collect()
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        let bits = self.bits_per_axis();
        coords
            .iter()
            .enumerate()
            .fold(0, |acc, (axis, &a)| acc | (a << (axis as u32 * bits)))
    }

    pub(crate) fn check_enumerable(&self, what: &'static str) -> Result<usize> {
        if self.total_bits() > MAX_ENUMERATION_BITS {
            return Err(Error::Capacity {
                what,
                requested: self.size(),
                limit: 1 << MAX_ENUMERATION_BITS,
            });
        }
        Ok(self.size() as usize)
    }
}

impl fmt::Display for GridDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.dims, self.points_per_axis)
    }
}

type PointFn = dyn Fn(&[usize]) -> f64 + Send + Sync;

/// A black-box integrand `f` on a [`GridDomain`] with values in `[0, 1]`.
///
/// Two counters are kept. `queries` is the complexity currency: one per
/// classical point query and one per coherent invocation of the oracle
/// inside a quantum circuit. `evaluations` counts how often the underlying
/// evaluator actually ran, i.e. what the simulation cost. With memoization
/// on, the value table is built once and `evaluations` stops growing.
pub struct IntegrandOracle {
    name: String,
    domain: GridDomain,
    evaluator: Arc<PointFn>,
    memo: bool,
    table: OnceLock<Arc<[f64]>>,
    queries: AtomicU64,
    evaluations: AtomicU64,
}

impl IntegrandOracle {
    /// Oracle over grid points directly.
    pub fn from_fn<F>(domain: GridDomain, f: F) -> Self
    where
        F: Fn(&[usize]) -> f64 + Send + Sync + 'static,
    {
        IntegrandOracle {
            name: "custom".to_owned(),
            domain,
            evaluator: Arc::new(f),
            memo: true,
            table: OnceLock::new(),
            queries: AtomicU64::new(0),
            evaluations: AtomicU64::new(0),
        }
    }

    /// `f(a_1, …, a_d) = g(a_1 / M, …, a_d / M)`.
    pub fn from_continuous<G>(g: G, domain: GridDomain) -> Self
    where
        G: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        let m = domain.points_per_axis() as f64;
        Self::from_fn(domain, move |a| {
            let x: Vec<f64> = a.iter().map(|&ai| ai as f64 / m).collect();
            g(&x)
        })
    }

    /// Oracle backed by an explicit value table indexed by flat point index.
    pub fn from_values(domain: GridDomain, values: Vec<f64>) -> Result<Self> {
        if values.len() as u64 != domain.size() {
            return Err(Error::domain(format!(
                "value table has {} entries, grid {} has {}",
                values.len(),
                domain,
                domain.size()
            )));
        }
        if let Some((i, &v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::Range {
                point: domain.coords(i),
                value: v,
            });
        }
        let values: Arc<[f64]> = values.into();
        let lookup = Arc::clone(&values);
        Ok(Self::from_fn(domain, move |a| lookup[domain.index(a)]))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_memo(mut self, memo: bool) -> Self {
        self.memo = memo;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> GridDomain {
        self.domain
    }

    pub fn memo(&self) -> bool {
        self.memo
    }

    pub fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations.load(Ordering::Relaxed)
    }

    /// Charge `n` logical queries without evaluating anything.
    ///
    /// Estimators simulate a circuit once and then charge the remaining
    /// physical repetitions (shots, median repetitions) through this.
    pub fn record_queries(&self, n: u64) {
        self.queries.fetch_add(n, Ordering::Relaxed);
    }

    /// One classical query of `f` at a flat point index.
    pub fn query(&self, index: usize) -> Result<f64> {
        self.record_queries(1);
        self.evaluate(index)
    }

    /// Runs the evaluator (or reads the memo table) without charging a query.
    pub fn evaluate(&self, index: usize) -> Result<f64> {
        if index as u64 >= self.domain.size() {
            return Err(Error::domain(format!(
                "point index {index} outside grid {}",
                self.domain
            )));
        }
        if let Some(table) = self.table.get() {
            return Ok(table[index]);
        }
        self.evaluate_raw(index)
    }

    fn evaluate_raw(&self, index: usize) -> Result<f64> {
        self.evaluations.fetch_add(1, Ordering::Relaxed);
        let point = self.domain.coords(index);
        let value = (self.evaluator)(&point);
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::Range { point, value });
        }
        Ok(value)
    }

    /// All `M^d` values in flat index order. Charges no queries.
    pub fn table(&self) -> Result<Arc<[f64]>> {
        if let Some(table) = self.table.get() {
            return Ok(Arc::clone(table));
        }
        let n = self.domain.check_enumerable("grid points")?;
        let values: Arc<[f64]> = (0..n)
            .map(|i| self.evaluate_raw(i))
            .collect::<Result<Vec<_>>>()?
            .into();
        if self.memo {
            // A racing thread may have filled it first; both tables are identical.
            let _ = self.table.set(Arc::clone(&values));
        }
        Ok(values)
    }
}

impl fmt::Debug for IntegrandOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntegrandOracle")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("memo", &self.memo)
            .field("queries", &self.queries())
            .field("evaluations", &self.evaluations())
            .finish()
    }
}
