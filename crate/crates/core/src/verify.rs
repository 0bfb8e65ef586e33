//! Named verification suites: each checks one identity or remainder bound
//! over a grid and reports the worst residue per case.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::asymptotics::{
    block_harmonic_sum, estimate_c0, f_term, inner_block_expansion, s_sum_asymptotic,
    s_sum_boundary_excess, s_sum_direct, s_sum_regrouped, taylor_f1, taylor_f2,
};
use crate::consts::corollary_c0;
use crate::error::{Error, Result};
use crate::exact::{cot_cos_identity_residual, floor_via_exponential_sum, frac_via_cot_sin};
use crate::scalar::Real;
use crate::sum::PrecisionConfig;

pub const DEFAULT_SEED: u64 = 0x5eed_c0c0;

/// Residue allowed for both trigonometric identities.
pub const PROP1_TOLERANCE: f64 = 1e-10;
/// Imaginary residue allowed in the floor identity.
pub const FLOOR_IMAG_TOLERANCE: f64 = 1e-9;
/// Scaled Taylor defects must stay below this.
pub const TAYLOR_CONSTANT: f64 = 10.0;
pub const COROLLARY_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Prop1,
    Floor,
    Lemma2,
    Lemma4,
    Lemma5,
    Corollary,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Prop1,
        Suite::Floor,
        Suite::Lemma2,
        Suite::Lemma4,
        Suite::Lemma5,
        Suite::Corollary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Prop1 => "prop1",
            Suite::Floor => "floor",
            Suite::Lemma2 => "lemma2",
            Suite::Lemma4 => "lemma4",
            Suite::Lemma5 => "lemma5",
            Suite::Corollary => "corollary",
        }
    }

    pub fn default_size(self) -> u64 {
        match self {
            Suite::Prop1 => 200,
            Suite::Floor => 100,
            Suite::Lemma2 => 100,
            Suite::Lemma4 => 100,
            Suite::Lemma5 => 100_000,
            Suite::Corollary => 1_000_000,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseResult {
    pub name: String,
    pub residue: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CaseResult {
    fn check(name: impl Into<String>, residue: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            residue,
            tolerance,
            passed: residue <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub size: u64,
    pub cases: Vec<CaseResult>,
    /// Extra named quantities worth reporting alongside the cases.
    pub diagnostics: Vec<(String, f64)>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn max_residue(&self) -> f64 {
        self.cases.iter().fold(0.0, |m, c| m.max(c.residue))
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.passed)
    }
}

pub fn run_suite<T: Real>(
    suite: Suite,
    size: Option<u64>,
    seed: u64,
    cfg: &PrecisionConfig,
) -> Result<SuiteReport> {
    let size = size.unwrap_or(suite.default_size());
    let (cases, diagnostics) = match suite {
        Suite::Prop1 => (prop1::<T>(size, seed, cfg)?, Vec::new()),
        Suite::Floor => (floor::<T>(size, cfg)?, Vec::new()),
        Suite::Lemma2 => (lemma2::<T>(size, cfg)?, Vec::new()),
        Suite::Lemma4 => (lemma4::<T>(size)?, Vec::new()),
        Suite::Lemma5 => (lemma5::<T>(size, cfg)?, Vec::new()),
        Suite::Corollary => corollary::<T>(size, cfg)?,
    };
    Ok(SuiteReport {
        suite,
        size,
        cases,
        diagnostics,
    })
}

/// 20 sampled `(a, n)` pairs per modulus `b <= size`.
fn prop1<T: Real>(size: u64, seed: u64, cfg: &PrecisionConfig) -> Result<Vec<CaseResult>> {
    if size < 2 {
        return Err(Error::Precondition("prop1 needs size >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(2 * size as usize);
    for b in 2..=size {
        let mut cos_max = 0.0f64;
        let mut frac_max = 0.0f64;
        for _ in 0..20 {
            let a = rng.gen_range(1..=1_000_000u64);
            let n = rng.gen_range(1..=1_000u64);
            let r: T = cot_cos_identity_residual(a, b, n, cfg)?;
            cos_max = cos_max.max(r.abs().to_f64_lossy());
            match frac_via_cot_sin::<T>(a, b, n, cfg) {
                Ok(f) => frac_max = frac_max.max(f.error().to_f64_lossy()),
                Err(Error::Precondition(_)) => {}
                Err(e) => return Err(e),
            }
        }
        cases.push(CaseResult::check(format!("cos b={b}"), cos_max, PROP1_TOLERANCE));
        cases.push(CaseResult::check(format!("frac b={b}"), frac_max, PROP1_TOLERANCE));
    }
    Ok(cases)
}

/// Every `a <= 10 size` for each `b <= size`.
fn floor<T: Real>(size: u64, cfg: &PrecisionConfig) -> Result<Vec<CaseResult>> {
    let mut cases = Vec::new();
    for b in 2..=size {
        let mut worst = 0.0f64;
        for a in 1..=10 * size {
            match floor_via_exponential_sum::<T>(a, b, cfg) {
                Ok(r) => worst = worst.max(r.imag_residue.abs().to_f64_lossy()),
                Err(Error::NumericalConsistency(_)) => worst = f64::INFINITY,
                Err(e) => return Err(e),
            }
        }
        cases.push(CaseResult::check(format!("floor b={b}"), worst, FLOOR_IMAG_TOLERANCE));
    }
    Ok(cases)
}

/// Block expansion against direct block sums, plus the last-block bookkeeping.
fn lemma2<T: Real>(size: u64, cfg: &PrecisionConfig) -> Result<Vec<CaseResult>> {
    let mut cases = Vec::new();
    let ks: Vec<u64> = [1u64, 2, 5, 10, 20, 50, 100, 1000].into_iter().filter(|&k| k <= size.max(1)).collect();
    for &b in &[2u64, 3, 10, 100] {
        for &k in &ks {
            let expansion: T = inner_block_expansion(k, b)?;
            let direct: T = block_harmonic_sum(k, b, cfg)?;
            let scale = ((k * b - 1) as f64).powi(4);
            let tol = 1.0 / scale + 64.0 * f64::EPSILON * direct.to_f64_lossy();
            let residue = (expansion - direct).abs().to_f64_lossy();
            cases.push(CaseResult::check(format!("block k={k} b={b}"), residue, tol));
        }
    }
    for &(m, b) in &[(100u64, 10u64), (size.max(10), 7)] {
        let l = m * b;
        let regrouped: T = s_sum_regrouped(l, b, cfg)?;
        let direct: T = s_sum_direct(l, b, cfg)?;
        let excess: T = s_sum_boundary_excess(l, b, cfg)?;
        let residue = (regrouped - direct - excess).abs().to_f64_lossy();
        let tol = 1e-9 * regrouped.to_f64_lossy();
        cases.push(CaseResult::check(format!("regroup L={l} b={b}"), residue, tol));
    }
    Ok(cases)
}

/// Scaled Taylor defects over the grid `{10, 20, 50, 100}^2`, extended to `size`.
fn lemma4<T: Real>(size: u64) -> Result<Vec<CaseResult>> {
    let mut grid = vec![10u64, 20, 50, 100];
    if size > 100 {
        grid.push(size);
    }
    let mut cases = Vec::new();
    for &k in &grid {
        for &b in &grid {
            let (kf, bf) = (T::from_uint(k), T::from_uint(b));
            let f1: T = f_term(1, k, b)?;
            let f2: T = f_term(2, k, b)?;
            let d1 = (f1 / T::lit(2.0) - taylor_f1::<T>(k, b)?).abs() * kf.powi(4) * bf;
            let d2 = (-f2 / T::lit(12.0) - taylor_f2::<T>(k, b)?).abs() * kf.powi(5) * bf * bf;
            cases.push(CaseResult::check(format!("f1 k={k} b={b}"), d1.to_f64_lossy(), TAYLOR_CONSTANT));
            cases.push(CaseResult::check(format!("f2 k={k} b={b}"), d2.to_f64_lossy(), TAYLOR_CONSTANT));
        }
    }
    Ok(cases)
}

/// `S(L; b)` against its closed form at `L/b` in `{size/10, size}`.
fn lemma5<T: Real>(size: u64, cfg: &PrecisionConfig) -> Result<Vec<CaseResult>> {
    if size < 10 {
        return Err(Error::Precondition("lemma5 needs size >= 10".into()));
    }
    let c = corollary_c0::<T>();
    let mut cases = Vec::new();
    for &b in &[10u64, 100] {
        for &m in &[size / 10, size] {
            let l = m * b;
            let direct: T = s_sum_direct(l, b, cfg)?;
            let asymptotic: T = s_sum_asymptotic(l, b, c)?;
            let residue = (direct - asymptotic).abs().to_f64_lossy();
            let tol = 2.0 + 0.05 * (b * b) as f64 / l as f64;
            cases.push(CaseResult::check(format!("S b={b} L/b={m}"), residue, tol));
        }
    }
    Ok(cases)
}

/// Extrapolated `r(b)` from `b = 10^2, 10^3, 10^4` against `(gamma - log 2 pi)/2`.
fn corollary<T: Real>(
    truncation_k: u64,
    cfg: &PrecisionConfig,
) -> Result<(Vec<CaseResult>, Vec<(String, f64)>)> {
    let estimate = estimate_c0::<T>(&[100, 1_000, 10_000], truncation_k, cfg)?;
    let target = corollary_c0::<T>();
    let gap = (estimate.value - target).abs().to_f64_lossy();
    let cases = vec![CaseResult::check("C0 gap", gap, COROLLARY_TOLERANCE)];
    let diagnostics = vec![
        ("c0_estimate".to_string(), estimate.value.to_f64_lossy()),
        ("c0_error_estimate".to_string(), estimate.tail_bound.to_f64_lossy()),
        ("c0_closed_form".to_string(), target.to_f64_lossy()),
        (
            "estimate_minus_closed_form".to_string(),
            (estimate.value - target).to_f64_lossy(),
        ),
    ];
    Ok((cases, diagnostics))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::double()
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        for (suite, size) in [
            (Suite::Prop1, 40),
            (Suite::Floor, 20),
            (Suite::Lemma2, 100),
            (Suite::Lemma4, 100),
            (Suite::Lemma5, 1_000),
        ] {
            let report = run_suite::<f64>(suite, Some(size), DEFAULT_SEED, &cfg()).unwrap();
            assert!(report.passed(), "{suite}: {:?}", report.failures().collect::<Vec<_>>());
            assert!(!report.cases.is_empty());
        }
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let a = run_suite::<f64>(Suite::Prop1, Some(30), 7, &cfg()).unwrap();
        let b = run_suite::<f64>(Suite::Prop1, Some(30), 7, &cfg()).unwrap();
        assert_eq!(a, b);
    }
}
