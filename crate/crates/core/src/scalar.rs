//! Scalar abstraction shared by every numerical routine in the crate.
//!
//! All kernels are written against [`Real`], which is implemented for `f64`
//! (binary64, 53-bit significand) and [`Quad`] (binary128, 113-bit
//! significand, backed by libquadmath).

use std::fmt::{Debug, Display};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Signed, ToPrimitive, Zero};

pub use f128::f128 as Quad;

/// Floating-point scalar usable by the evaluation kernels.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Significand width in bits, including the implicit bit.
    const SIGNIFICAND_BITS: u32;

    /// Shortest decimal string that parses back to the same value.
    fn to_round_trip_string(&self) -> String;

    /// Converts a binary64 literal. Exact for every finite `f64`.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 literal")
    }

    fn from_int(n: i128) -> Self {
        Self::from_i128(n).expect("integer conversion")
    }

    fn from_uint(n: u64) -> Self {
        Self::from_u64(n).expect("integer conversion")
    }

    /// `num / den` rounded once (up to the final conversion) to `Self`.
    fn ratio(num: i128, den: i128) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const SIGNIFICAND_BITS: u32 = 53;

    fn to_round_trip_string(&self) -> String {
        format!("{:?}", self)
    }
}

impl Real for Quad {
    const SIGNIFICAND_BITS: u32 = 113;

    fn to_round_trip_string(&self) -> String {
        // 36 significant digits round-trip binary128.
        self.to_string_fmt("%.35Qe").unwrap_or_else(|| "nan".to_string())
    }
}

/// Converts an exact rational to `T` with at most a couple of ulps of error.
pub fn from_rational<T: Real>(q: &BigRational) -> T {
    let num = q.numer();
    let den = q.denom();
    if num.is_zero() {
        return T::zero();
    }
    let negative = num.sign() == Sign::Minus;
    let num = num.abs();
    // Scale so the integer quotient carries about 128 significant bits.
    let shift = 128i64 - (num.bits() as i64 - den.bits() as i64);
    let quotient: BigInt = if shift >= 0 {
        (num << shift as usize) / den
    } else {
        num / (den << (-shift) as usize)
    };
    let mut acc = T::zero();
    let radix = T::from_uint(1u64 << 32);
    for digit in quotient.to_u32_digits().1.iter().rev() {
        acc = acc * radix + T::from_uint(*digit as u64);
    }
    let value = acc * T::lit(2.0).powi(-(shift as i32));
    if negative {
        -value
    } else {
        value
    }
}
