use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A reduced fraction `h/k`, the argument of `c0` and of `E(0, h/k, alpha)`.
///
/// Either `k >= 2`, `1 <= h < k` and `gcd(h, k) = 1`, or the single value
/// `1/1` used by the `k = 1` branch of the Estermann evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReducedFraction {
    h: u64,
    k: u64,
}

impl ReducedFraction {
    pub fn new(h: u64, k: u64) -> Result<Self> {
        if k == 1 {
            return if h == 1 {
                Ok(Self { h, k })
            } else {
                Err(Error::Domain(format!("k = 1 requires h = 1, got h = {h}")))
            };
        }
        if k == 0 {
            return Err(Error::Domain("k must be positive".into()));
        }
        if h == 0 || h >= k {
            return Err(Error::Domain(format!("need 1 <= h < k, got h = {h}, k = {k}")));
        }
        let g = h.gcd(&k);
        if g != 1 {
            return Err(Error::Domain(format!("gcd({h}, {k}) = {g}, fraction not reduced")));
        }
        Ok(Self { h, k })
    }

    /// `1/b`, the argument used throughout the asymptotic analysis.
    pub fn unit(b: u64) -> Result<Self> {
        Self::new(1, b)
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// `(k - h)/k`; `None` for `1/1`.
    pub fn complement(&self) -> Option<Self> {
        (self.k >= 2).then(|| Self { h: self.k - self.h, k: self.k })
    }
}

impl fmt::Display for ReducedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.h, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(ReducedFraction::new(1, 4).is_ok());
        assert!(ReducedFraction::new(3, 4).is_ok());
        assert!(ReducedFraction::new(1, 1).is_ok());
        assert!(matches!(ReducedFraction::new(2, 4), Err(Error::Domain(_))));
        assert!(matches!(ReducedFraction::new(0, 4), Err(Error::Domain(_))));
        assert!(matches!(ReducedFraction::new(4, 4), Err(Error::Domain(_))));
        assert!(matches!(ReducedFraction::new(2, 1), Err(Error::Domain(_))));
        assert!(matches!(ReducedFraction::new(1, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn complement() {
        let f = ReducedFraction::new(2, 7).unwrap();
        assert_eq!(f.complement().unwrap(), ReducedFraction::new(5, 7).unwrap());
        assert_eq!(ReducedFraction::new(1, 1).unwrap().complement(), None);
    }
}
