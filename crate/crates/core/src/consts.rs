//! Mathematical constants evaluated in the working precision.

use crate::bernoulli::bernoulli;
use crate::scalar::{from_rational, Real};
use crate::sum::CompensatedSum;

/// Harmonic cut-off for the Euler-Maclaurin evaluation of gamma.
const GAMMA_CUTOFF: u64 = 16;

/// A numerically extracted constant with its truncation metadata.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantEstimate<T> {
    pub value: T,
    /// Series truncation length used for the estimate.
    pub truncation_k: u64,
    /// A-posteriori estimate of the neglected part; not a certified bound.
    pub tail_bound: T,
}

/// Euler-Mascheroni constant.
///
/// Uses the Euler-Maclaurin expansion
/// `gamma = H_N - ln N - 1/(2N) + sum_j B_{2j} / (2j N^{2j})`
/// at `N = 16`, truncated once the correction falls below the working epsilon.
/// The tail is asymptotic, but at `N = 16` its smallest term is far below
/// binary128 resolution.
pub fn euler_gamma<T: Real>() -> T {
    let n = T::from_uint(GAMMA_CUTOFF);
    let mut acc = CompensatedSum::new();
    for i in 1..=GAMMA_CUTOFF {
        acc.add(T::from_uint(i).recip());
    }
    acc.add(-(T::from_uint(4) * T::LN_2()));
    acc.add(-(n + n).recip());
    let n2 = n * n;
    let mut power = n2;
    for j in 1..=25usize {
        let b = from_rational::<T>(&bernoulli(2 * j).expect("index within table"));
        let term = b / (T::from_uint(2 * j as u64) * power);
        acc.add(term);
        if term.abs() < T::epsilon() * T::epsilon() {
            break;
        }
        power = power * n2;
    }
    acc.value()
}

/// `log(2 pi) = log 2 + log pi`.
pub fn log_two_pi<T: Real>() -> T {
    T::LN_2() + T::PI().ln()
}

/// `(gamma - log 2 pi) / 2`, the constant appearing in the `2 b C0 / pi` term.
pub fn corollary_c0<T: Real>() -> T {
    (euler_gamma::<T>() - log_two_pi::<T>()) / T::lit(2.0)
}
