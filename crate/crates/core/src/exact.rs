//! Exact finite-sum evaluations: the cotangent sum `c0(h/k)`, the Estermann
//! value `E(0, h/k, alpha)` and the exponential-sum identities for floors and
//! fractional parts.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;

use crate::bernoulli::bernoulli;
use crate::error::{Error, Result};
use crate::fraction::ReducedFraction;
use crate::scalar::{from_rational, Real};
use crate::sum::{sum_terms, PrecisionConfig};
use crate::trig::{cot_pi_ratio, cot_reduced, sin_cos_pi_ratio};

/// Highest derivative order supported by [`cot_derivative`].
pub const MAX_COT_DERIVATIVE: usize = 16;

/// Rounding distance beyond which the floor identity is reported as broken.
pub const FLOOR_CONSISTENCY_LIMIT: f64 = 1e-6;

fn require_modulus(b: u64, name: &str) -> Result<()> {
    if b < 2 {
        return Err(Error::Domain(format!("{name} must be >= 2, got {b}")));
    }
    Ok(())
}

/// `c0(h/k) = -sum_{m=1}^{k-1} (m/k) cot(pi m h / k)`.
pub fn c0<T: Real>(frac: ReducedFraction, cfg: &PrecisionConfig) -> Result<T> {
    let (h, k) = (frac.h(), frac.k());
    require_modulus(k, "k")?;
    let kt = T::from_uint(k);
    let sum = sum_terms(
        (k - 1) as usize,
        |i| {
            let m = i as u64 + 1;
            let cot: T = cot_reduced(m, h, k).expect("m h is coprime to k");
            T::from_uint(m) / kt * cot
        },
        cfg,
    );
    Ok(-sum)
}

/// `E(0, h/k, alpha)` split into real and imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct EstermannValue<T> {
    pub real_part: T,
    pub imag_part: T,
    pub alpha: u32,
    /// Exact value when it is rational (odd `alpha`, or `k = 1`).
    pub exact: Option<BigRational>,
}

fn bernoulli_quotient(alpha: u32) -> Result<BigRational> {
    let index = alpha as usize + 1;
    let b = bernoulli(index)?;
    Ok(b / BigRational::from_integer(BigInt::from(2 * index)))
}

/// Ishibashi's closed forms for the Estermann function at `s = 0`.
///
/// * even `alpha`: `(-i/2)^{alpha+1} sum_{m<k} (m/k) cot^{(alpha)}(pi m h/k) + delta_{alpha,0}/4`
/// * odd `alpha`: `B_{alpha+1} / (2 (alpha + 1))`
/// * `k = 1`: `(-1)^{alpha+1} B_{alpha+1} / (2 (alpha + 1))`
pub fn estermann_at_zero<T: Real>(
    frac: ReducedFraction,
    alpha: u32,
    cfg: &PrecisionConfig,
) -> Result<EstermannValue<T>> {
    if frac.k() == 1 {
        let mut q = bernoulli_quotient(alpha)?;
        if alpha % 2 == 0 {
            q = -q;
        }
        return Ok(EstermannValue {
            real_part: from_rational(&q),
            imag_part: T::zero(),
            alpha,
            exact: Some(q),
        });
    }
    if alpha % 2 == 1 {
        let q = bernoulli_quotient(alpha)?;
        return Ok(EstermannValue {
            real_part: from_rational(&q),
            imag_part: T::zero(),
            alpha,
            exact: Some(q),
        });
    }
    if alpha as usize > MAX_COT_DERIVATIVE {
        return Err(Error::Capacity {
            what: "cotangent derivative order",
            requested: alpha as usize,
            max: MAX_COT_DERIVATIVE,
        });
    }
    let (h, k) = (frac.h(), frac.k());
    let kt = T::from_uint(k);
    let sum = sum_terms(
        (k - 1) as usize,
        |i| {
            let m = i as u64 + 1;
            let r = (m as u128 * h as u128 % k as u128) as u64;
            let d: T = cot_derivative(alpha as usize, r, k).expect("r is a unit mod k");
            T::from_uint(m) / kt * d
        },
        cfg,
    );
    let factor = Complex::new(T::zero(), -T::lit(0.5)).powi(alpha as i32 + 1);
    let mut value = factor * sum;
    if alpha == 0 {
        value.re = value.re + T::lit(0.25);
    }
    Ok(EstermannValue {
        real_part: value.re,
        imag_part: value.im,
        alpha,
        exact: None,
    })
}

/// Integer coefficients (ascending powers of `u`) of `P_n` with
/// `cot^{(n)}(x) = P_n(cot x)`, `P_0 = u`, `P_{n+1} = -(1 + u^2) P_n'`.
pub fn cot_derivative_polynomial(n: usize) -> Result<&'static [i128]> {
    static TABLE: OnceLock<Vec<Vec<i128>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut polys = vec![vec![0i128, 1]];
        for _ in 0..MAX_COT_DERIVATIVE {
            let p = polys.last().expect("nonempty");
            let deriv: Vec<i128> = p.iter().enumerate().skip(1).map(|(j, c)| j as i128 * c).collect();
            let mut next = vec![0i128; deriv.len() + 2];
            for (j, c) in deriv.iter().enumerate() {
                next[j] -= c;
                next[j + 2] -= c;
            }
            polys.push(next);
        }
        polys
    });
    table.get(n).map(Vec::as_slice).ok_or(Error::Capacity {
        what: "cotangent derivative order",
        requested: n,
        max: MAX_COT_DERIVATIVE,
    })
}

fn horner<T: Real>(coeffs: &[i128], u: T) -> T {
    coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * u + T::from_int(c))
}

/// `cot^{(n)}(pi r / k)`.
pub fn cot_derivative<T: Real>(n: usize, r: u64, k: u64) -> Result<T> {
    let poly = cot_derivative_polynomial(n)?;
    let u: T = cot_pi_ratio(r as u128, k)?;
    Ok(horner(poly, u))
}

/// `cot^{(n)}(x)` at an arbitrary real point.
pub fn cot_derivative_at<T: Real>(n: usize, x: T) -> Result<T> {
    let poly = cot_derivative_polynomial(n)?;
    Ok(horner(poly, x.tan().recip()))
}

/// Outcome of evaluating the floor identity in complex arithmetic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloorIdentity<T> {
    pub value: u64,
    pub real: T,
    pub imag_residue: T,
    pub rounding_distance: T,
}

/// `floor(a/b)` from
/// `a/b + 1/(2b) - 1/2 + (1/(2b)) sum_{m=1}^{b-1} (1 - i cot(pi m/b)) e^{2 pi i m a/b}`.
pub fn floor_via_exponential_sum<T: Real>(
    a: u64,
    b: u64,
    cfg: &PrecisionConfig,
) -> Result<FloorIdentity<T>> {
    require_modulus(b, "b")?;
    let a_mod = a % b;
    let term = |i: usize| -> (T, T) {
        let m = i as u64 + 1;
        let cot: T = cot_pi_ratio(m as u128, b).expect("0 < m < b");
        let angle = 2 * (m as u128 * a_mod as u128 % b as u128);
        let (s, c) = sin_cos_pi_ratio::<T>(angle, b);
        // (1 - i cot)(c + i s) = (c + cot s) + i (s - cot c)
        (c + cot * s, s - cot * c)
    };
    let n = (b - 1) as usize;
    let re_sum: T = sum_terms(n, |i| term(i).0, cfg);
    let im_sum: T = sum_terms(n, |i| term(i).1, cfg);
    let bt = T::from_uint(b);
    let two_b = bt + bt;
    let real = T::from_uint(a) / bt + two_b.recip() - T::lit(0.5) + re_sum / two_b;
    let imag = im_sum / two_b;
    let rounded = real.round();
    let distance = (real - rounded).abs();
    let limit = T::lit(FLOOR_CONSISTENCY_LIMIT);
    if imag.abs() > limit || distance > limit {
        return Err(Error::NumericalConsistency(format!(
            "floor identity for a = {a}, b = {b}: imaginary residue {imag}, rounding distance {distance}"
        )));
    }
    let value = rounded
        .to_u64()
        .ok_or_else(|| Error::NumericalConsistency(format!("floor identity produced {real}")))?;
    if value != a / b {
        return Err(Error::NumericalConsistency(format!(
            "floor identity for a = {a}, b = {b} gave {value}, expected {}",
            a / b
        )));
    }
    Ok(FloorIdentity {
        value,
        real,
        imag_residue: imag,
        rounding_distance: distance,
    })
}

/// `sum_{m=1}^{b-1} cot(pi m/b) cos(2 pi m n a/b)`, which vanishes identically.
pub fn cot_cos_identity_residual<T: Real>(
    a: u64,
    b: u64,
    n: u64,
    cfg: &PrecisionConfig,
) -> Result<T> {
    require_modulus(b, "b")?;
    let q = (n as u128 * a as u128 % b as u128) as u64;
    Ok(sum_terms(
        (b - 1) as usize,
        |i| {
            let m = i as u64 + 1;
            let cot: T = cot_pi_ratio(m as u128, b).expect("0 < m < b");
            let (_, c) = sin_cos_pi_ratio::<T>(2 * (m as u128 * q as u128 % b as u128), b);
            cot * c
        },
        cfg,
    ))
}

/// Fractional part `{na/b}` recovered from the cotangent-sine sum.
#[derive(Debug, Clone, PartialEq)]
pub struct FracIdentityResult<T> {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub value: T,
    /// `na mod b`; the exact fractional part is this over `b`.
    pub exact_numerator: u64,
}

impl<T: Real> FracIdentityResult<T> {
    pub fn exact(&self) -> BigRational {
        BigRational::new(BigInt::from(self.exact_numerator), BigInt::from(self.b))
    }

    pub fn error(&self) -> T {
        (self.value - T::ratio(self.exact_numerator as i128, self.b as i128)).abs()
    }
}

/// `{na/b} = 1/2 - (1/(2b)) sum_{m=1}^{b-1} cot(pi m/b) sin(2 pi m n a/b)` for `b` not dividing `na`.
pub fn frac_via_cot_sin<T: Real>(
    a: u64,
    b: u64,
    n: u64,
    cfg: &PrecisionConfig,
) -> Result<FracIdentityResult<T>> {
    require_modulus(b, "b")?;
    let q = (n as u128 * a as u128 % b as u128) as u64;
    if q == 0 {
        return Err(Error::Precondition(format!("b = {b} divides n a = {}", n as u128 * a as u128)));
    }
    let sum: T = sum_terms(
        (b - 1) as usize,
        |i| {
            let m = i as u64 + 1;
            let cot: T = cot_pi_ratio(m as u128, b).expect("0 < m < b");
            let (s, _) = sin_cos_pi_ratio::<T>(2 * (m as u128 * q as u128 % b as u128), b);
            cot * s
        },
        cfg,
    );
    let bt = T::from_uint(b);
    Ok(FracIdentityResult {
        n,
        a,
        b,
        value: T::lit(0.5) - sum / (bt + bt),
        exact_numerator: q,
    })
}

/// `sum_{m=1}^{b-1} cot(pi m/b)`, zero up to rounding.
pub fn cot_row_sum_zero<T: Real>(b: u64, cfg: &PrecisionConfig) -> Result<T> {
    require_modulus(b, "b")?;
    Ok(sum_terms(
        (b - 1) as usize,
        |i| cot_pi_ratio::<T>(i as u128 + 1, b).expect("0 < m < b"),
        cfg,
    ))
}

/// Whether `E(0, h/k, 0) = 1/4 + (i/2) c0(h/k)` holds to `tol`.
pub fn alpha_zero_consistent<T: Real>(frac: ReducedFraction, cfg: &PrecisionConfig, tol: T) -> Result<bool> {
    let e = estermann_at_zero::<T>(frac, 0, cfg)?;
    let c = c0::<T>(frac, cfg)?;
    Ok((e.real_part - T::lit(0.25)).abs() <= tol && (e.imag_part - c / T::lit(2.0)).abs() <= tol)
}
