//! Block expansion of `S(L; b)`, the correction series `r(b)`, extraction of
//! its limit, and the residual analysis of the closed-form asymptotic for
//! `c0(1/b)`.

use rayon::prelude::*;

use crate::consts::{euler_gamma, log_two_pi, ConstantEstimate};
use crate::error::{Error, Result};
use crate::exact::c0;
use crate::fraction::ReducedFraction;
use crate::scalar::Real;
use crate::series::require_period_aligned;
use crate::sum::{sum_terms, PrecisionConfig};

fn require_block(k: u64, b: u64) -> Result<()> {
    if b < 2 {
        return Err(Error::Domain(format!("b must be >= 2, got {b}")));
    }
    if k == 0 {
        return Err(Error::Domain("block index k must be positive".into()));
    }
    Ok(())
}

/// `F_i(k) = ((k+1)b - 1)^{-i} - (kb - 1)^{-i}`.
pub fn f_term<T: Real>(i: i32, k: u64, b: u64) -> Result<T> {
    require_block(k, b)?;
    let upper = T::from_uint((k + 1) * b - 1);
    let lower = T::from_uint(k * b - 1);
    Ok(upper.powi(-i) - lower.powi(-i))
}

/// `log(((k+1)b - 1)/(kb - 1)) + F_1/2 - F_2/12`, the Euler-Maclaurin
/// approximation of `sum_{a=kb}^{(k+1)b-1} 1/a`.
pub fn inner_block_expansion<T: Real>(k: u64, b: u64) -> Result<T> {
    require_block(k, b)?;
    let log = T::ratio(b as i128, (k * b - 1) as i128).ln_1p();
    let f1: T = f_term(1, k, b)?;
    let f2: T = f_term(2, k, b)?;
    Ok(log + f1 / T::lit(2.0) - f2 / T::lit(12.0))
}

/// `sum_{a=kb}^{(k+1)b-1} 1/a` summed directly.
pub fn block_harmonic_sum<T: Real>(k: u64, b: u64, cfg: &PrecisionConfig) -> Result<T> {
    require_block(k, b)?;
    let start = k * b;
    Ok(sum_terms(b as usize, |i| T::from_uint(start + i as u64).recip(), cfg))
}

/// Main terms of `F_1(k)/2`: `-1/(2k^2 b) + 1/(2k^3 b) - 1/(k^3 b^2)`.
pub fn taylor_f1<T: Real>(k: u64, b: u64) -> Result<T> {
    require_block(k, b)?;
    let (k, b) = (T::from_uint(k), T::from_uint(b));
    let two = T::lit(2.0);
    let k2 = k * k;
    let k3 = k2 * k;
    Ok(-(two * k2 * b).recip() + (two * k3 * b).recip() - (k3 * b * b).recip())
}

/// Main terms of `-F_2(k)/12`: `1/(6k^3 b^2) - 1/(4k^4 b^2) + 1/(2k^4 b^3)`.
pub fn taylor_f2<T: Real>(k: u64, b: u64) -> Result<T> {
    require_block(k, b)?;
    let (k, b) = (T::from_uint(k), T::from_uint(b));
    let k3 = k * k * k;
    let k4 = k3 * k;
    let b2 = b * b;
    Ok((T::lit(6.0) * k3 * b2).recip() - (T::lit(4.0) * k4 * b2).recip()
        + (T::lit(2.0) * k4 * b2 * b).recip())
}

/// `2b sum_{a <= limit} floor(a/b) / a` without the divisibility requirement.
fn s_sum_raw<T: Real>(limit: u64, b: u64, cfg: &PrecisionConfig) -> T {
    let sum: T = sum_terms(
        limit as usize,
        |i| {
            let a = i as u64 + 1;
            T::ratio((a / b) as i128, a as i128)
        },
        cfg,
    );
    T::from_uint(2 * b) * sum
}

/// `S(L; b) = 2b sum_{a <= L} floor(a/b) / a` for `b | L`.
pub fn s_sum_direct<T: Real>(limit_l: u64, b: u64, cfg: &PrecisionConfig) -> Result<T> {
    require_period_aligned(b, limit_l)?;
    Ok(s_sum_raw(limit_l, b, cfg))
}

/// The block form `2b sum_{k <= L/b} k sum_{kb <= a < (k+1)b} 1/a`.
///
/// Its last block runs to `a = L + b - 1`, so it equals the defining sum
/// truncated at `L' = L + b - 1`, and exceeds [`s_sum_direct`] by
/// [`s_sum_boundary_excess`].
pub fn s_sum_regrouped<T: Real>(limit_l: u64, b: u64, cfg: &PrecisionConfig) -> Result<T> {
    require_period_aligned(b, limit_l)?;
    let blocks = limit_l / b;
    let sum: T = sum_terms(
        blocks as usize,
        |i| {
            let k = i as u64 + 1;
            let block: T = block_harmonic_sum(k, b, &PrecisionConfig::for_scalar::<T>())
                .expect("valid block");
            T::from_uint(k) * block
        },
        cfg,
    );
    Ok(T::from_uint(2 * b) * sum)
}

/// `2L sum_{a=L+1}^{L+b-1} 1/a`, the overshoot of the final block.
pub fn s_sum_boundary_excess<T: Real>(limit_l: u64, b: u64, cfg: &PrecisionConfig) -> Result<T> {
    require_period_aligned(b, limit_l)?;
    let tail: T = sum_terms(
        (b - 1) as usize,
        |i| T::from_uint(limit_l + 1 + i as u64).recip(),
        cfg,
    );
    Ok(T::from_uint(2 * limit_l) * tail)
}

/// `2b sum_{k <= L/b} k * inner_block_expansion(k, b)`.
pub fn s_sum_block_expansion<T: Real>(limit_l: u64, b: u64, cfg: &PrecisionConfig) -> Result<T> {
    require_period_aligned(b, limit_l)?;
    let sum: T = sum_terms(
        (limit_l / b) as usize,
        |i| {
            let k = i as u64 + 1;
            T::from_uint(k) * inner_block_expansion::<T>(k, b).expect("valid block")
        },
        cfg,
    );
    Ok(T::from_uint(2 * b) * sum)
}

/// `k (log(((k+1)b - 1)/(kb - 1)) - 1/k + 1/(2k^2) - 1/(b k^2))`.
pub fn r_term<T: Real>(k: u64, b: u64) -> T {
    let kt = T::from_uint(k);
    let bt = T::from_uint(b);
    let log = T::ratio(b as i128, (k * b - 1) as i128).ln_1p();
    let k2 = kt * kt;
    kt * (log - kt.recip() + (T::lit(2.0) * k2).recip() - (bt * k2).recip())
}

fn r_range<T: Real>(start: u64, end: u64, b: u64, cfg: &PrecisionConfig) -> T {
    sum_terms((end - start) as usize, |i| r_term(start + 1 + i as u64, b), cfg)
}

/// Partial sum of `r(b)` to `k = K` with a tail estimate from dyadic increments.
///
/// With `I1 = S_K - S_{K/2}`, `I2 = S_{2K} - S_K` and `rho = I2 / I1`, the tail
/// beyond `K` is estimated as `I2 / (1 - rho)`.
pub fn r_series<T: Real>(b: u64, truncation_k: u64, cfg: &PrecisionConfig) -> Result<ConstantEstimate<T>> {
    if b < 2 {
        return Err(Error::Domain(format!("b must be >= 2, got {b}")));
    }
    if truncation_k < 100 {
        return Err(Error::Precondition(format!("need K >= 100, got {truncation_k}")));
    }
    let half = truncation_k / 2;
    let head: T = r_range(0, half, b, cfg);
    let inc1: T = r_range(half, truncation_k, b, cfg);
    let inc2: T = r_range(truncation_k, 2 * truncation_k, b, cfg);
    let rho = inc2 / inc1;
    let tail = if rho > T::zero() && rho < T::one() {
        (inc2 / (T::one() - rho)).abs()
    } else {
        inc1.abs() + inc2.abs()
    };
    Ok(ConstantEstimate {
        value: head + inc1,
        truncation_k,
        tail_bound: tail,
    })
}

/// Lagrange weights for evaluating the interpolant through `(h_i, y_i)` at 0.
fn weights_at_zero<T: Real>(h: &[T]) -> Vec<T> {
    (0..h.len())
        .map(|i| {
            h.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(T::one(), |w, (_, &hj)| w * hj / (hj - h[i]))
        })
        .collect()
}

/// Polynomial extrapolation in `1/b` of `r(b)` to `b -> infinity`.
///
/// The error estimate is the change against the extrapolation that drops the
/// smallest `b`, plus the truncation tails propagated through the weights.
pub fn estimate_c0<T: Real>(bs: &[u64], truncation_k: u64, cfg: &PrecisionConfig) -> Result<ConstantEstimate<T>> {
    if bs.len() < 3 {
        return Err(Error::Precondition(format!(
            "need at least 3 values of b, got {}",
            bs.len()
        )));
    }
    if bs.windows(2).any(|w| w[0] >= w[1]) || bs[0] < 2 {
        return Err(Error::Precondition("bs must be strictly increasing and >= 2".into()));
    }
    let estimates = bs
        .par_iter()
        .map(|&b| r_series::<T>(b, truncation_k, cfg))
        .collect::<Result<Vec<_>>>()?;
    let h: Vec<T> = bs.iter().map(|&b| T::from_uint(b).recip()).collect();
    let w = weights_at_zero(&h);
    let value = w.iter().zip(&estimates).fold(T::zero(), |acc, (&wi, e)| acc + wi * e.value);
    let w_prev = weights_at_zero(&h[1..]);
    let prev = w_prev
        .iter()
        .zip(&estimates[1..])
        .fold(T::zero(), |acc, (&wi, e)| acc + wi * e.value);
    let propagated = w
        .iter()
        .zip(&estimates)
        .fold(T::zero(), |acc, (&wi, e)| acc + wi.abs() * e.tail_bound);
    Ok(ConstantEstimate {
        value,
        truncation_k,
        tail_bound: (value - prev).abs() + propagated,
    })
}

/// `2bC_0 + 2L + (1 - b) log(L/b) + (1 - b) gamma`.
pub fn s_sum_asymptotic<T: Real>(limit_l: u64, b: u64, c0_constant: T) -> Result<T> {
    require_period_aligned(b, limit_l)?;
    let (bt, lt) = (T::from_uint(b), T::from_uint(limit_l));
    let one_minus_b = T::one() - bt;
    Ok((bt + bt) * c0_constant + (lt + lt) + one_minus_b * (lt / bt).ln() + one_minus_b * euler_gamma::<T>())
}

/// `(b/pi) log b - (b/pi)(log 2 pi - gamma)`.
pub fn c0_main_terms<T: Real>(b: u64) -> Result<T> {
    if b < 2 {
        return Err(Error::Domain(format!("b must be >= 2, got {b}")));
    }
    let bt = T::from_uint(b);
    Ok(bt / T::PI() * (bt.ln() - log_two_pi::<T>() + euler_gamma::<T>()))
}

/// Exact `c0(1/b)` against the two main terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualRecord<T> {
    pub b: u64,
    pub c0_exact: T,
    pub c0_main_terms: T,
    /// `c0_exact - c0_main_terms`
    pub delta: T,
}

/// Least-squares line through `(log b, delta)`.
///
/// `slope` and `intercept` are `None` with fewer than two samples.
#[derive(Debug, Clone, PartialEq)]
pub struct LogFitReport<T> {
    pub slope: Option<T>,
    pub intercept: Option<T>,
    pub max_abs_delta: T,
    pub sample_bs: Vec<u64>,
}

pub fn residual_record<T: Real>(b: u64, cfg: &PrecisionConfig) -> Result<ResidualRecord<T>> {
    let exact: T = c0(ReducedFraction::unit(b)?, cfg)?;
    let main: T = c0_main_terms(b)?;
    Ok(ResidualRecord {
        b,
        c0_exact: exact,
        c0_main_terms: main,
        delta: exact - main,
    })
}

pub fn fit_log_residuals<T: Real>(records: &[ResidualRecord<T>]) -> LogFitReport<T> {
    let max_abs_delta = records.iter().fold(T::zero(), |m, r| m.max(r.delta.abs()));
    let sample_bs = records.iter().map(|r| r.b).collect();
    if records.len() < 2 {
        return LogFitReport {
            slope: None,
            intercept: None,
            max_abs_delta,
            sample_bs,
        };
    }
    let n = T::from_uint(records.len() as u64);
    let xs: Vec<T> = records.iter().map(|r| T::from_uint(r.b).ln()).collect();
    let x_mean = xs.iter().fold(T::zero(), |a, &x| a + x) / n;
    let y_mean = records.iter().fold(T::zero(), |a, r| a + r.delta) / n;
    let (sxy, sxx) = xs.iter().zip(records).fold((T::zero(), T::zero()), |(sxy, sxx), (&x, r)| {
        let dx = x - x_mean;
        (sxy + dx * (r.delta - y_mean), sxx + dx * dx)
    });
    let slope = sxy / sxx;
    LogFitReport {
        slope: Some(slope),
        intercept: Some(y_mean - slope * x_mean),
        max_abs_delta,
        sample_bs,
    }
}

/// Residuals `delta(b)` for each `b` and their fit against `log b`.
///
/// Values of `b` are evaluated concurrently; records come back in input order.
pub fn residual_scan<T: Real>(
    bs: &[u64],
    cfg: &PrecisionConfig,
) -> Result<(Vec<ResidualRecord<T>>, LogFitReport<T>)> {
    if bs.is_empty() {
        return Err(Error::Precondition("residual scan needs at least one b".into()));
    }
    if bs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("bs must be strictly increasing".into()));
    }
    let records = bs
        .par_iter()
        .map(|&b| residual_record(b, cfg))
        .collect::<Result<Vec<_>>>()?;
    let fit = fit_log_residuals(&records);
    Ok((records, fit))
}
