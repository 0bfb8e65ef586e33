mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cotsum::verify::{Suite, DEFAULT_SEED};
use cotsum::{Precision, PrecisionConfig, Quad, Summation};

use crate::commands::{CliError, Emit};
use crate::output::Format;

/// Cotangent sums c0(h/k), Estermann values at s = 0 and the asymptotics of c0(1/b).
#[derive(Debug, Parser)]
#[command(name = "cotsum", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Working precision in bits: 53 is binary64, 54..=113 runs in binary128.
    #[arg(long, global = true, env = "COTSUM_PRECISION", default_value_t = 53)]
    pub precision: u32,
    #[arg(long, global = true, default_value = "compensated")]
    pub summation: Summation,
    /// Split long sums into chunks of this many terms and add them in parallel.
    #[arg(long, global = true)]
    pub parallel_chunk: Option<usize>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Prop1,
    Floor,
    Lemma2,
    Lemma4,
    Lemma5,
    Corollary,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Prop1 => Suite::Prop1,
            SuiteArg::Floor => Suite::Floor,
            SuiteArg::Lemma2 => Suite::Lemma2,
            SuiteArg::Lemma4 => Suite::Lemma4,
            SuiteArg::Lemma5 => Suite::Lemma5,
            SuiteArg::Corollary => Suite::Corollary,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate c0(h/k), and E(0, h/k, alpha) when --alpha is given.
    Eval {
        #[arg(long)]
        h: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        alpha: Option<u32>,
    },
    /// Run a named verification suite; exits 1 when any case fails.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Grid size, sample count or truncation length, depending on the suite.
        #[arg(long)]
        size: Option<u64>,
    },
    /// Tabulate delta(b) = c0(1/b) - main terms over a range of b.
    Residuals {
        #[arg(long)]
        b_min: u64,
        #[arg(long)]
        b_max: u64,
        /// Multiply b by this factor instead of stepping by one.
        #[arg(long)]
        geometric_step: Option<u64>,
        /// Write the table here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Upper bound on the total number of cotangent terms.
        #[arg(long, default_value_t = 1e8)]
        budget: f64,
    },
    /// Evaluate gamma, log 2 pi, the closed-form C0 and its series estimate.
    Constants {
        /// Truncation length of the r(b) series.
        #[arg(long, default_value_t = 1_000_000)]
        k: u64,
        #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
        bs: Vec<u64>,
    },
}

fn config(global: &GlobalOpts) -> Result<PrecisionConfig, CliError> {
    Ok(PrecisionConfig::new(global.precision)?
        .with_summation(global.summation)
        .with_parallel_chunk(global.parallel_chunk))
}

fn run(cli: &Cli) -> Result<Emit, CliError> {
    let cfg = config(&cli.global)?;
    match cfg.precision() {
        Precision::Double => commands::dispatch::<f64>(cli, &cfg),
        Precision::Quad => commands::dispatch::<Quad>(cli, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(emit) => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            match emit.write(cli.global.format, &mut lock).and_then(|()| lock.flush()) {
                Ok(()) => ExitCode::from(emit.exit_code),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
