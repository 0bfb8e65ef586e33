//! Infinite-series representations of `c0(1/b)` and the harmonic sums they
//! reduce to.
//!
//! Every series term `b (1 - 2{a/b}) / a` is an exact rational; numerators are
//! formed in integers and each term is rounded once.

use crate::asymptotics::s_sum_direct;
use crate::consts::euler_gamma;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sum::{sum_terms, PrecisionConfig};

/// A truncation length with an estimate of the neglected tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesTruncation<T> {
    pub limit_l: u64,
    pub tail_estimate: T,
}

impl<T: Real> SeriesTruncation<T> {
    /// Truncation of `G_L(b)` at a whole number of periods.
    ///
    /// Each period `[kb, (k+1)b)` contributes about `(b-1)(b-2) / (6 b k^2)`, so
    /// the tail beyond `L` is about `(b-1)(b-2) / (6L)`.
    pub fn for_g_partial(b: u64, limit_l: u64) -> Result<Self> {
        require_period_aligned(b, limit_l)?;
        let (bf, lf) = (T::from_uint(b), T::from_uint(limit_l));
        let one = T::one();
        Ok(Self {
            limit_l,
            tail_estimate: (bf - one) * (bf - one - one) / (T::lit(6.0) * lf),
        })
    }

    pub fn is_period_aligned(&self, b: u64) -> bool {
        b != 0 && self.limit_l % b == 0
    }
}

fn require_modulus(b: u64) -> Result<()> {
    if b < 2 {
        return Err(Error::Domain(format!("b must be >= 2, got {b}")));
    }
    Ok(())
}

pub(crate) fn require_period_aligned(b: u64, l: u64) -> Result<()> {
    require_modulus(b)?;
    if l == 0 || l % b != 0 {
        return Err(Error::Precondition(format!("b = {b} must divide L = {l}")));
    }
    Ok(())
}

/// Integer numerator of the series term for `a`: `b (1 - 2{a/b}) a^{-1} = (b - 2 (a mod b)) / a`.
#[inline]
fn series_numerator(a: u64, b: u64) -> i128 {
    b as i128 - 2 * (a % b) as i128
}

/// `(1/pi) sum_{a <= A, b does not divide a} b (1 - 2{a/b}) / a`, summed in increasing `a`.
pub fn c0_series_partial<T: Real>(b: u64, limit_a: u64, cfg: &PrecisionConfig) -> Result<T> {
    require_modulus(b)?;
    if limit_a < b {
        return Err(Error::Precondition(format!("need A >= b, got A = {limit_a}, b = {b}")));
    }
    let sum: T = sum_terms(
        limit_a as usize,
        |i| {
            let a = i as u64 + 1;
            if a % b == 0 {
                T::zero()
            } else {
                T::ratio(series_numerator(a, b), a as i128)
            }
        },
        cfg,
    );
    Ok(sum / T::PI())
}

/// `G_L(b) = sum_{a <= L, b does not divide a} [(b/a)(1 + 2 floor(a/b)) - 2]`.
pub fn g_partial<T: Real>(b: u64, limit_l: u64, cfg: &PrecisionConfig) -> Result<T> {
    require_modulus(b)?;
    if limit_l < b {
        return Err(Error::Precondition(format!("need L >= b, got L = {limit_l}, b = {b}")));
    }
    Ok(sum_terms(
        limit_l as usize,
        |i| {
            let a = i as u64 + 1;
            if a % b == 0 {
                T::zero()
            } else {
                let numerator = b as i128 * (1 + 2 * (a / b) as i128) - 2 * a as i128;
                T::ratio(numerator, a as i128)
            }
        },
        cfg,
    ))
}

/// `sum_{a <= N} sin(a theta) / a` for `0 < theta < 2 pi`.
pub fn sin_series_partial<T: Real>(theta: T, terms: u64, cfg: &PrecisionConfig) -> Result<T> {
    if !(theta > T::zero() && theta < T::TAU()) {
        return Err(Error::Domain(format!("theta = {theta} outside (0, 2 pi)")));
    }
    Ok(sum_terms(
        terms as usize,
        |i| {
            let a = T::from_uint(i as u64 + 1);
            (a * theta).sin() / a
        },
        cfg,
    ))
}

/// `sum_{n <= floor(x)} 1/n`.
pub fn harmonic_sum<T: Real>(x: f64, cfg: &PrecisionConfig) -> Result<T> {
    if !(x >= 1.0) || !x.is_finite() {
        return Err(Error::Domain(format!("harmonic sum needs x >= 1, got {x}")));
    }
    Ok(harmonic_number(x.floor() as u64, cfg))
}

pub(crate) fn harmonic_number<T: Real>(n: u64, cfg: &PrecisionConfig) -> T {
    sum_terms(n as usize, |i| T::from_uint(i as u64 + 1).recip(), cfg)
}

/// `sum_{a <= L, b | a} 1/a = (1/b) H_{floor(L/b)}`.
pub fn divisible_harmonic_sum<T: Real>(b: u64, limit_l: u64, cfg: &PrecisionConfig) -> Result<T> {
    require_modulus(b)?;
    if limit_l < b {
        return Err(Error::Precondition(format!(
            "no multiples of b = {b} up to L = {limit_l}"
        )));
    }
    Ok(harmonic_number::<T>(limit_l / b, cfg) / T::from_uint(b))
}

/// `G_L(b) - [-log(L/b) + b (log L + gamma) - 2L + S(L; b)]`.
///
/// The divisible terms removed from `G_L(b)` contribute `-log(L/b) - gamma`,
/// so this difference settles at `-gamma + O(b/L)` rather than at zero.
pub fn g_lemma_decomposition_check<T: Real>(b: u64, limit_l: u64, cfg: &PrecisionConfig) -> Result<T> {
    require_period_aligned(b, limit_l)?;
    if limit_l / b < 10 {
        return Err(Error::Precondition(format!("need L/b >= 10, got {}", limit_l / b)));
    }
    let g: T = g_partial(b, limit_l, cfg)?;
    let s: T = s_sum_direct(limit_l, b, cfg)?;
    let (bf, lf) = (T::from_uint(b), T::from_uint(limit_l));
    let predicted = -(lf / bf).ln() + bf * (lf.ln() + euler_gamma::<T>()) - (lf + lf) + s;
    Ok(g - predicted)
}
