//! Trigonometric evaluation at rational multiples of pi.
//!
//! Arguments are always given as an integer ratio `n/d` and reduced in exact
//! integer arithmetic to an angle in `[-pi/4, pi/4]` before any floating-point
//! work happens, so a huge numerator costs nothing in accuracy.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `(sin(pi n / d), cos(pi n / d))` for `d >= 1`.
pub fn sin_cos_pi_ratio<T: Real>(n: u128, d: u64) -> (T, T) {
    assert!(d > 0, "denominator must be positive");
    let d = d as u128;
    let t = n % (2 * d);
    // nearest quadrant boundary j*pi/2 and the remainder angle in units of pi/(2d)
    let j = (4 * t + d) / (2 * d);
    let rem = (2 * t) as i128 - (j * d) as i128;
    let y = T::PI() * T::from_int(rem) / T::from_int(2 * d as i128);
    let (s, c) = y.sin_cos();
    match j % 4 {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

/// Signed variant of [`sin_cos_pi_ratio`].
pub fn sin_cos_pi_ratio_signed<T: Real>(n: i128, d: u64) -> (T, T) {
    let period = 2 * d as i128;
    sin_cos_pi_ratio(n.rem_euclid(period) as u128, d)
}

/// `cot(pi r / k)` for `k` not dividing `r`.
pub fn cot_pi_ratio<T: Real>(r: u128, k: u64) -> Result<T> {
    if r % k as u128 == 0 {
        return Err(Error::Pole { numerator: r, k });
    }
    let k128 = k as u128;
    let r = r % k128;
    // cot(pi - x) = -cot(x) keeps the reflection identity exact
    if 2 * r > k128 {
        return Ok(-cot_pi_ratio::<T>(k128 - r, k)?);
    }
    if 4 * r == k128 {
        return Ok(T::one());
    }
    if 4 * r < k128 {
        let y = T::PI() * T::from_int(r as i128) / T::from_int(k as i128);
        let (s, c) = y.sin_cos();
        Ok(c / s)
    } else {
        // cot(x) = tan(pi/2 - x), with pi/2 - x = pi (k - 2r) / (2k) <= pi/4
        let y = T::PI() * T::from_int((k128 - 2 * r) as i128) / T::from_int(2 * k as i128);
        let (s, c) = y.sin_cos();
        Ok(s / c)
    }
}

/// `cot(pi m h / k)`, with `r = m h mod k` computed exactly first.
pub fn cot_reduced<T: Real>(m: u64, h: u64, k: u64) -> Result<T> {
    if k < 2 {
        return Err(Error::Domain(format!("cot_reduced needs k >= 2, got {k}")));
    }
    let r = (m as u128 * h as u128) % k as u128;
    if r == 0 {
        return Err(Error::Pole { numerator: m as u128 * h as u128, k });
    }
    cot_pi_ratio(r, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Quad;

    fn ulps_apart(a: f64, b: f64) -> f64 {
        (a - b).abs() / (f64::EPSILON * b.abs().max(f64::MIN_POSITIVE))
    }

    #[test]
    fn spot_values() {
        assert_eq!(cot_reduced::<f64>(1, 1, 4).unwrap(), 1.0);
        assert_eq!(cot_reduced::<f64>(2, 1, 4).unwrap(), 0.0);
        assert!(matches!(cot_reduced::<f64>(4, 1, 4), Err(Error::Pole { .. })));
        let third = cot_reduced::<f64>(1, 1, 3).unwrap();
        assert!((third - 0.5773502691896258).abs() <= 2.0 * f64::EPSILON * third);
        // (10^9 + 1) mod 3 = 2
        let big = cot_reduced::<f64>(1_000_000_001, 1, 3).unwrap();
        assert_eq!(big, cot_reduced::<f64>(2, 1, 3).unwrap());
        assert!((big + 0.5773502691896258).abs() <= 2.0 * f64::EPSILON * third);
    }

    #[test]
    fn huge_products_reduce_exactly() {
        let m = u64::MAX - 2;
        let h = u64::MAX - 58;
        let k = 1_000_003u64;
        let r = (m as u128 * h as u128 % k as u128) as u64;
        assert_eq!(
            cot_reduced::<f64>(m, h, k).unwrap(),
            cot_reduced::<f64>(r, 1, k).unwrap()
        );
    }

    #[test]
    fn pole_detection_is_exact() {
        assert!(matches!(cot_reduced::<f64>(7, 6, 42), Err(Error::Pole { .. })));
        assert!(cot_reduced::<f64>(7, 5, 42).is_ok());
        assert!(matches!(cot_reduced::<f64>(1, 1, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn reflection_symmetry() {
        for k in 2..=200u64 {
            for r in 1..k {
                let a = cot_reduced::<f64>(r, 1, k).unwrap();
                let b = cot_reduced::<f64>(k - r, 1, k).unwrap();
                assert_eq!(a, -b, "k = {k}, r = {r}");
            }
        }
    }

    #[test]
    fn relative_error_within_eight_ulps() {
        for k in (2..=400u64).chain([1_000, 4_096, 65_537, 1 << 20]) {
            let step = (k / 400).max(1);
            for r in (1..k).step_by(step as usize) {
                let got = cot_reduced::<f64>(r, 1, k).unwrap();
                let reference = cot_reduced::<Quad>(r, 1, k).unwrap().to_f64_lossy();
                if reference == 0.0 {
                    assert_eq!(got, 0.0);
                    continue;
                }
                assert!(ulps_apart(got, reference) <= 8.0, "k = {k}, r = {r}");
            }
        }
    }

    #[test]
    fn sin_cos_quadrants() {
        for d in 1..=24u64 {
            for n in 0..(4 * d) as u128 {
                let (s, c) = sin_cos_pi_ratio::<f64>(n, d);
                let x = std::f64::consts::PI * n as f64 / d as f64;
                assert!((s - x.sin()).abs() < 1e-14 && (c - x.cos()).abs() < 1e-14);
            }
        }
        let (s, c) = sin_cos_pi_ratio_signed::<f64>(-1, 2);
        assert_eq!((s, c), (-1.0, 0.0));
    }
}
