//! Exact evaluation of the cotangent sum
//! `c0(h/k) = -sum_{m=1}^{k-1} (m/k) cot(pi m h / k)`, the Estermann function
//! at `s = 0`, the series and block expansions that lead to the asymptotic
//! `c0(1/b) = (b/pi) log b - (b/pi)(log 2 pi - gamma) + O(1)`, and the
//! residual analysis that checks the bounded error term numerically.
//!
//! Numerical routines are generic over [`Real`]; [`f64`] and [`Quad`]
//! (binary128) are provided. Exact quantities such as Bernoulli numbers use
//! [`num_rational::BigRational`].
//!
//! ```
//! use cotsum::{c0, PrecisionConfig, ReducedFraction};
//!
//! let value: f64 = c0(ReducedFraction::new(1, 4).unwrap(), &PrecisionConfig::double()).unwrap();
//! assert!((value - 0.5).abs() < 1e-15);
//! ```

pub mod asymptotics;
pub mod bernoulli;
pub mod consts;
pub mod error;
pub mod exact;
pub mod fraction;
pub mod scalar;
pub mod series;
pub mod sum;
pub mod trig;
pub mod verify;

pub use asymptotics::{
    c0_main_terms, estimate_c0, f_term, inner_block_expansion, r_series, residual_scan,
    s_sum_asymptotic, s_sum_direct, taylor_f1, taylor_f2, LogFitReport, ResidualRecord,
};
pub use bernoulli::bernoulli;
pub use consts::{corollary_c0, euler_gamma, log_two_pi, ConstantEstimate};
pub use error::{Error, Result};
pub use exact::{
    c0, cot_cos_identity_residual, cot_derivative, cot_row_sum_zero, estermann_at_zero,
    floor_via_exponential_sum, frac_via_cot_sin, EstermannValue, FracIdentityResult,
};
pub use fraction::ReducedFraction;
pub use scalar::{Quad, Real};
pub use series::{
    c0_series_partial, divisible_harmonic_sum, g_lemma_decomposition_check, g_partial,
    harmonic_sum, sin_series_partial, SeriesTruncation,
};
pub use sum::{sum_strategy, Precision, PrecisionConfig, Summation};
pub use trig::cot_reduced;

/// Exact rational type used for Bernoulli numbers and exact checks.
pub type Rational = num_rational::BigRational;

pub type ResidualRecord64 = ResidualRecord<f64>;
pub type ResidualRecordQuad = ResidualRecord<Quad>;
pub type LogFitReport64 = LogFitReport<f64>;
pub type LogFitReportQuad = LogFitReport<Quad>;
pub type ConstantEstimate64 = ConstantEstimate<f64>;
pub type ConstantEstimateQuad = ConstantEstimate<Quad>;
pub type EstermannValue64 = EstermannValue<f64>;
pub type EstermannValueQuad = EstermannValue<Quad>;
