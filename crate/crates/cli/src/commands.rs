//! Subcommand implementations, generic over the working scalar.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use cotsum::verify::{run_suite, Suite};
use cotsum::{
    c0, corollary_c0, estermann_at_zero, estimate_c0, euler_gamma, log_two_pi, r_series,
    residual_scan, PrecisionConfig, Real, ReducedFraction,
};
use thiserror::Error;

use crate::output::{Format, OutputRecord, Table, Value};
use crate::{Cli, Command};

/// Relative drift allowed between `Im E(0, h/k, 0)` and `c0(h/k) / 2`.
const ALPHA_ZERO_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cotsum::Error),
    #[error("invalid arguments: {0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(cotsum::Error::NumericalConsistency(_)) => 3,
            CliError::Core(_) | CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }
}

pub enum Body {
    Record(OutputRecord),
    /// Table on stdout; for CSV and text the summary goes to stderr.
    Table(Table),
}

pub struct Emit {
    pub body: Body,
    pub exit_code: u8,
}

impl Emit {
    fn ok(record: OutputRecord) -> Self {
        Self {
            body: Body::Record(record),
            exit_code: 0,
        }
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> std::io::Result<()> {
        match &self.body {
            Body::Record(r) => r.write(format, out),
            Body::Table(t) => {
                t.write(format, out)?;
                if format != Format::Json {
                    for (k, v) in &t.summary {
                        eprintln!("{k} = {v}");
                    }
                }
                Ok(())
            }
        }
    }
}

fn common_params(record: &mut OutputRecord, cfg: &PrecisionConfig) {
    record
        .param("precision", u64::from(cfg.working_precision()))
        .param("summation", cfg.summation.to_string());
    if let Some(chunk) = cfg.parallel_chunk {
        record.param("parallel_chunk", chunk.get() as u64);
    }
}

pub fn dispatch<T: Real>(cli: &Cli, cfg: &PrecisionConfig) -> Result<Emit, CliError> {
    match &cli.command {
        Command::Eval { h, k, alpha } => eval::<T>(cfg, *h, *k, *alpha),
        Command::Verify { suite, size } => verify::<T>(cli, cfg, (*suite).into(), *size),
        Command::Residuals {
            b_min,
            b_max,
            geometric_step,
            out,
            budget,
        } => residuals::<T>(cfg, *b_min, *b_max, *geometric_step, out.as_deref(), *budget),
        Command::Constants { k, bs } => constants::<T>(cfg, *k, bs),
    }
}

fn eval<T: Real>(
    cfg: &PrecisionConfig,
    h: u64,
    k: u64,
    alpha: Option<u32>,
) -> Result<Emit, CliError> {
    let frac = ReducedFraction::new(h, k)?;
    if k == 1 && alpha.is_none() {
        return Err(CliError::Usage("c0 needs k >= 2; pass --alpha to evaluate E at 1/1".into()));
    }
    let mut record = OutputRecord::new("eval");
    record.param("h", h).param("k", k);
    if let Some(a) = alpha {
        record.param("alpha", u64::from(a));
    }
    common_params(&mut record, cfg);

    let c0_value: Option<T> = if k >= 2 { Some(c0(frac, cfg)?) } else { None };
    if let Some(v) = c0_value {
        record.value("c0", Value::real(v));
    }
    if let Some(a) = alpha {
        let e = estermann_at_zero::<T>(frac, a, cfg)?;
        record
            .value("estermann_re", Value::real(e.real_part))
            .value("estermann_im", Value::real(e.imag_part));
        if let Some(q) = &e.exact {
            record.value("estermann_exact", q.to_string());
        }
        if let (0, Some(v)) = (a, c0_value) {
            let drift = (e.imag_part - v / T::lit(2.0)).abs();
            record.diagnostic("imag_minus_half_c0", Value::real(drift));
            let allowed = T::lit(ALPHA_ZERO_TOLERANCE) * (T::one() + v.abs());
            if !(drift <= allowed) {
                return Err(cotsum::Error::NumericalConsistency(format!(
                    "Im E(0, {frac}, 0) differs from c0/2 by {drift}"
                ))
                .into());
            }
        }
    }
    Ok(Emit::ok(record))
}

fn verify<T: Real>(
    cli: &Cli,
    cfg: &PrecisionConfig,
    suite: Suite,
    size: Option<u64>,
) -> Result<Emit, CliError> {
    let report = run_suite::<T>(suite, size, cli.global.seed, cfg)?;
    let mut record = OutputRecord::new("verify");
    record
        .param("suite", suite.name())
        .param("size", report.size)
        .param("seed", cli.global.seed);
    common_params(&mut record, cfg);
    let failures: Vec<_> = report.failures().collect();
    record
        .value("passed", report.passed())
        .value("cases", report.cases.len() as u64)
        .value("failures", failures.len() as u64)
        .value("max_residue", Value::real(report.max_residue()));
    if let Some(worst) = report
        .cases
        .iter()
        .max_by(|a, b| (a.residue / a.tolerance).total_cmp(&(b.residue / b.tolerance)))
    {
        record
            .diagnostic("worst_case", worst.name.clone())
            .diagnostic("worst_residue", Value::real(worst.residue))
            .diagnostic("worst_tolerance", Value::real(worst.tolerance));
    }
    for (name, v) in &report.diagnostics {
        record.diagnostic(name, Value::real(*v));
    }
    for case in failures {
        record.diagnostic(&format!("failed: {}", case.name), Value::real(case.residue));
    }
    Ok(Emit {
        body: Body::Record(record),
        exit_code: if report.passed() { 0 } else { 1 },
    })
}

fn sample_bs(b_min: u64, b_max: u64, step: Option<u64>) -> Result<Vec<u64>, CliError> {
    if b_min < 2 {
        return Err(CliError::Usage(format!("--b-min must be >= 2, got {b_min}")));
    }
    if b_min >= b_max {
        return Err(CliError::Usage(format!(
            "--b-min ({b_min}) must be less than --b-max ({b_max})"
        )));
    }
    match step {
        None => Ok((b_min..=b_max).collect()),
        Some(s) if s < 2 => Err(CliError::Usage(format!("--geometric-step must be >= 2, got {s}"))),
        Some(s) => {
            let mut bs = vec![b_min];
            while let Some(next) = bs.last().and_then(|b| b.checked_mul(s)).filter(|&b| b <= b_max) {
                bs.push(next);
            }
            Ok(bs)
        }
    }
}

fn residuals<T: Real>(
    cfg: &PrecisionConfig,
    b_min: u64,
    b_max: u64,
    step: Option<u64>,
    out: Option<&Path>,
    budget: f64,
) -> Result<Emit, CliError> {
    let bs = sample_bs(b_min, b_max, step)?;
    let work: f64 = bs.iter().map(|&b| b as f64).sum();
    if !(work <= budget) {
        return Err(CliError::Usage(format!(
            "the scan needs {work:e} cotangent terms, over the budget of {budget:e}; \
             use --geometric-step or raise --budget"
        )));
    }
    let (records, fit) = residual_scan::<T>(&bs, cfg)?;
    let rows = records
        .iter()
        .map(|r| {
            vec![
                Value::UInt(r.b),
                Value::real(r.c0_exact),
                Value::real(r.c0_main_terms),
                Value::real(r.delta),
            ]
        })
        .collect();
    let real_or_null = |x: Option<T>| x.map_or(Value::Real(None), Value::real);
    let mut summary = vec![
        ("record".to_string(), Value::from("summary")),
        ("samples".to_string(), Value::UInt(records.len() as u64)),
        ("b_min".to_string(), Value::UInt(b_min)),
        ("b_max".to_string(), Value::UInt(b_max)),
        ("max_abs_delta".to_string(), Value::real(fit.max_abs_delta)),
        ("slope".to_string(), real_or_null(fit.slope)),
        ("intercept".to_string(), real_or_null(fit.intercept)),
        ("precision".to_string(), Value::UInt(u64::from(cfg.working_precision()))),
        ("summation".to_string(), Value::Text(cfg.summation.to_string())),
    ];
    let table = Table {
        header: vec!["b", "c0_exact", "c0_main_terms", "delta"],
        rows,
        summary: Vec::new(),
    };
    match out {
        Some(path) => {
            let format = match path.extension().and_then(|e| e.to_str()) {
                Some("json") | Some("jsonl") => Format::Json,
                _ => Format::Csv,
            };
            let mut w = BufWriter::new(File::create(path)?);
            table.write(format, &mut w)?;
            w.flush()?;
            summary.push(("out".to_string(), Value::Text(path.display().to_string())));
            let mut record = OutputRecord::new("residuals");
            for (k, v) in summary.into_iter().skip(1) {
                record.value(&k, v);
            }
            Ok(Emit::ok(record))
        }
        None => Ok(Emit::ok_table(Table { summary, ..table })),
    }
}

impl Emit {
    fn ok_table(table: Table) -> Self {
        Self {
            body: Body::Table(table),
            exit_code: 0,
        }
    }
}

fn constants<T: Real>(cfg: &PrecisionConfig, k: u64, bs: &[u64]) -> Result<Emit, CliError> {
    let mut record = OutputRecord::new("constants");
    record.param("k", k).param(
        "bs",
        bs.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
    );
    common_params(&mut record, cfg);
    let closed = corollary_c0::<T>();
    record
        .value("gamma", Value::real(euler_gamma::<T>()))
        .value("log_two_pi", Value::real(log_two_pi::<T>()))
        .value("c0_closed_form", Value::real(closed));
    for &b in bs {
        let r = r_series::<T>(b, k, cfg)?;
        record.value(&format!("r_{b}"), Value::real(r.value));
        record.diagnostic(&format!("r_{b}_tail"), Value::real(r.tail_bound));
    }
    if bs.len() >= 3 {
        let est = estimate_c0::<T>(bs, k, cfg)?;
        record
            .value("c0_estimate", Value::real(est.value))
            .diagnostic("c0_error_estimate", Value::real(est.tail_bound))
            .diagnostic("estimate_minus_closed_form", Value::real(est.value - closed));
    }
    Ok(Emit::ok(record))
}
