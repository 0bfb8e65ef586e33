//! Summation strategies and the precision configuration that selects them.

use std::num::NonZeroUsize;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Leaf size of the sequential pairwise tree when no chunking is configured.
pub const DEFAULT_PAIRWISE_BLOCK: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Summation {
    /// Left-to-right accumulation.
    Naive,
    /// Neumaier's variant of Kahan summation.
    #[default]
    Compensated,
    /// Naive sums over fixed-size leaves, reduced by a balanced binary tree.
    Pairwise,
}

impl std::str::FromStr for Summation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Self::Naive),
            "compensated" | "kahan" => Ok(Self::Compensated),
            "pairwise" => Ok(Self::Pairwise),
            other => Err(Error::Domain(format!("unknown summation strategy `{other}`"))),
        }
    }
}

impl std::fmt::Display for Summation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Naive => "naive",
            Self::Compensated => "compensated",
            Self::Pairwise => "pairwise",
        })
    }
}

/// Scalar type selected by a working precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    /// binary64
    Double,
    /// binary128
    Quad,
}

impl Precision {
    pub fn from_bits(bits: u32) -> Result<Self> {
        match bits {
            0..=52 => Err(Error::Domain(format!("working precision {bits} < 53 bits"))),
            53 => Ok(Self::Double),
            54..=113 => Ok(Self::Quad),
            _ => Err(Error::Capacity {
                what: "working precision (bits)",
                requested: bits as usize,
                max: 113,
            }),
        }
    }

    pub fn bits(self) -> u32 {
        match self {
            Self::Double => 53,
            Self::Quad => 113,
        }
    }
}

/// Working precision, summation strategy and optional parallel chunking.
///
/// When `parallel_chunk` is set, summations split their index range into
/// consecutive chunks of that length, evaluate the chunks on the rayon pool
/// and combine the chunk results in index order. The reduction tree depends
/// only on the input length and the chunk size, so results are reproducible
/// bit for bit regardless of thread count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionConfig {
    working_precision: u32,
    pub summation: Summation,
    pub parallel_chunk: Option<NonZeroUsize>,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        Self::double()
    }
}

impl PrecisionConfig {
    pub fn new(working_precision: u32) -> Result<Self> {
        Precision::from_bits(working_precision)?;
        Ok(Self {
            working_precision,
            summation: Summation::default(),
            parallel_chunk: None,
        })
    }

    pub fn double() -> Self {
        Self {
            working_precision: 53,
            summation: Summation::default(),
            parallel_chunk: None,
        }
    }

    pub fn quad() -> Self {
        Self {
            working_precision: 113,
            ..Self::double()
        }
    }

    /// Configuration matching the significand width of `T`.
    pub fn for_scalar<T: Real>() -> Self {
        Self {
            working_precision: T::SIGNIFICAND_BITS,
            ..Self::double()
        }
    }

    pub fn with_summation(mut self, summation: Summation) -> Self {
        self.summation = summation;
        self
    }

    pub fn with_parallel_chunk(mut self, chunk: Option<usize>) -> Self {
        self.parallel_chunk = chunk.and_then(NonZeroUsize::new);
        self
    }

    pub fn working_precision(&self) -> u32 {
        self.working_precision
    }

    pub fn precision(&self) -> Precision {
        Precision::from_bits(self.working_precision).expect("validated on construction")
    }
}

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy)]
pub struct CompensatedSum<T> {
    sum: T,
    compensation: T,
}

impl<T: Real> Default for CompensatedSum<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            compensation: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, value: T) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation = self.compensation + ((self.sum - t) + value);
        } else {
            self.compensation = self.compensation + ((value - t) + self.sum);
        }
        self.sum = t;
    }

    /// Folds another accumulator in, keeping both error terms.
    pub fn merge(&mut self, other: &Self) {
        self.add(other.sum);
        self.compensation = self.compensation + other.compensation;
    }

    pub fn value(&self) -> T {
        self.sum + self.compensation
    }
}

fn naive_range<T: Real, F: Fn(usize) -> T>(start: usize, end: usize, term: &F) -> T {
    (start..end).fold(T::zero(), |acc, i| acc + term(i))
}

fn compensated_range<T: Real, F: Fn(usize) -> T>(
    start: usize,
    end: usize,
    term: &F,
) -> CompensatedSum<T> {
    let mut acc = CompensatedSum::new();
    for i in start..end {
        acc.add(term(i));
    }
    acc
}

/// Balanced reduction: split at the midpoint, recurse, add the halves.
fn tree_reduce<T: Real>(values: &[T]) -> T {
    match values.len() {
        0 => T::zero(),
        1 => values[0],
        n => {
            let (left, right) = values.split_at(n / 2);
            tree_reduce(left) + tree_reduce(right)
        }
    }
}

fn chunk_results<R, G>(n: usize, chunk: usize, parallel: bool, per_chunk: G) -> Vec<R>
where
    R: Send,
    G: Fn(usize, usize) -> R + Sync,
{
    let chunks = n.div_ceil(chunk);
    let run = |c: usize| per_chunk(c * chunk, ((c + 1) * chunk).min(n));
    if parallel {
        (0..chunks).into_par_iter().map(run).collect()
    } else {
        (0..chunks).map(run).collect()
    }
}

/// Sequential pairwise sum with the given leaf size.
pub fn pairwise_sum<T: Real>(values: &[T], block: usize) -> T {
    let block = block.max(1);
    let leaves: Vec<T> = values
        .chunks(block)
        .map(|c| c.iter().fold(T::zero(), |acc, &v| acc + v))
        .collect();
    tree_reduce(&leaves)
}

/// Sums `term(0) + ... + term(n - 1)` under the configured strategy.
///
/// Terms are generated on demand, so very long series never need to be
/// materialized.
pub fn sum_terms<T, F>(n: usize, term: F, cfg: &PrecisionConfig) -> T
where
    T: Real,
    F: Fn(usize) -> T + Sync,
{
    let parallel = cfg.parallel_chunk.is_some();
    match (cfg.summation, cfg.parallel_chunk) {
        (Summation::Naive, None) => naive_range(0, n, &term),
        (Summation::Compensated, None) => compensated_range(0, n, &term).value(),
        (Summation::Naive, Some(c)) => {
            chunk_results(n, c.get(), parallel, |s, e| naive_range(s, e, &term))
                .into_iter()
                .fold(T::zero(), |acc, v| acc + v)
        }
        (Summation::Compensated, Some(c)) => {
            let mut total = CompensatedSum::new();
            for part in chunk_results(n, c.get(), parallel, |s, e| compensated_range(s, e, &term)) {
                total.merge(&part);
            }
            total.value()
        }
        (Summation::Pairwise, chunk) => {
            let block = chunk.map_or(DEFAULT_PAIRWISE_BLOCK, NonZeroUsize::get);
            let leaves = chunk_results(n, block, parallel, |s, e| naive_range(s, e, &term));
            tree_reduce(&leaves)
        }
    }
}

/// Sums a slice under the configured strategy. The empty sum is zero.
pub fn sum_strategy<T: Real>(values: &[T], cfg: &PrecisionConfig) -> T {
    sum_terms(values.len(), |i| values[i], cfg)
}
