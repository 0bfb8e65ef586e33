//! Bernoulli numbers in exact rational arithmetic.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_INDEX: usize = 64;

/// `B_0, ..., B_max` from `sum_{j=0}^{m} C(m+1, j) B_j = 0`, so `B_1 = -1/2`.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
}

impl BernoulliTable {
    pub fn new(max_index: usize) -> Self {
        let mut values: Vec<BigRational> = Vec::with_capacity(max_index + 1);
        values.push(BigRational::one());
        for m in 1..=max_index {
            // binom(m + 1, j) built incrementally across j.
            let mut binom = BigInt::one();
            let mut acc = BigRational::zero();
            for (j, b) in values.iter().enumerate() {
                acc += b * BigRational::from_integer(binom.clone());
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            values.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        Self { values }
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, m: usize) -> Result<&BigRational> {
        self.values.get(m).ok_or(Error::Capacity {
            what: "Bernoulli index",
            requested: m,
            max: self.max_index(),
        })
    }
}

fn default_table() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(|| BernoulliTable::new(DEFAULT_MAX_INDEX))
}

/// Exact `B_m` for `m <= 64`.
pub fn bernoulli(m: usize) -> Result<BigRational> {
    default_table().get(m).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::binomial;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0).unwrap(), q(1, 1));
        assert_eq!(bernoulli(1).unwrap(), q(-1, 2));
        assert_eq!(bernoulli(2).unwrap(), q(1, 6));
        assert_eq!(bernoulli(3).unwrap(), q(0, 1));
        assert_eq!(bernoulli(4).unwrap(), q(-1, 30));
        assert_eq!(bernoulli(12).unwrap(), q(-691, 2730));
    }

    #[test]
    fn odd_indices_vanish() {
        for m in (3..=DEFAULT_MAX_INDEX).step_by(2) {
            assert!(bernoulli(m).unwrap().is_zero(), "B_{m}");
        }
    }

    #[test]
    fn recurrence_holds_exactly() {
        for m in 1..=DEFAULT_MAX_INDEX {
            let mut acc = BigRational::zero();
            for j in 0..=m {
                let c = binomial(BigInt::from(m + 1), BigInt::from(j));
                acc += BigRational::from_integer(c) * bernoulli(j).unwrap();
            }
            assert!(acc.is_zero(), "recurrence fails at m = {m}");
        }
    }

    #[test]
    fn capacity() {
        assert!(matches!(
            bernoulli(65),
            Err(Error::Capacity { requested: 65, max: 64, .. })
        ));
        let t = BernoulliTable::new(80);
        assert_eq!(t.max_index(), 80);
        assert!(t.get(80).is_ok());
    }
}
