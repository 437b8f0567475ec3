use std::io::Write;
use std::process::ExitCode;

use charsum_core::SpecialArgument;
use charsum_curves::commands::{
    run_count, run_hyper, run_isogeny, run_special_values, CharSpec, IsogenySource, ModelKind, ModelParams,
};
use charsum_curves::config::DEFAULT_PRIME_CEILING;
use charsum_curves::verify::summary_on_stdout;
use charsum_curves::{
    run_verify_scan, CliError, FieldArg, MethodSelection, Outcome, OutputFormat, RunConfig, Suite,
};
use clap::{Args, Parser, Subcommand};

/// Point counts and character-sum identities for Edwards-type curves over F_p.
#[derive(Debug, Parser)]
#[command(name = "charsum-curves", version, propagate_version = true)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,

    /// Largest prime accepted anywhere.
    #[arg(long, global = true, env = "CHARSUM_PMAX", default_value_t = DEFAULT_PRIME_CEILING)]
    prime_ceiling: u64,

    /// Lift the prime ceiling (up to 2^31).
    #[arg(long, global = true)]
    unsafe_pmax: bool,

    /// Override the numeric tolerance of floating-point comparisons.
    #[arg(long, global = true, value_parser = positive_f64)]
    tolerance: Option<f64>,

    /// Worker threads for scans (default: all cores).
    #[arg(long, short = 'j', global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count the points of a curve model over F_p.
    #[command(allow_negative_numbers = true)]
    Count {
        #[arg(long, value_enum)]
        model: ModelKind,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = MethodSelection::Brute)]
        method: MethodSelection,
    },
    /// Evaluate a hypergeometric series at x.
    #[command(allow_negative_numbers = true)]
    Hyper {
        #[arg(long)]
        p: u64,
        /// Comma-separated upper characters (eps, phi, k or chi_k).
        #[arg(long, value_delimiter = ',', required = true)]
        upper: Vec<CharSpec>,
        /// Comma-separated lower characters, one fewer than upper.
        #[arg(long, value_delimiter = ',')]
        lower: Vec<CharSpec>,
        #[arg(long)]
        x: FieldArg,
    },
    /// Tabulate the closed-form 2F1 special values over a prime range.
    #[command(allow_negative_numbers = true)]
    SpecialValues {
        /// One of -1, 1/2, 2.
        #[arg(long)]
        lambda: SpecialArgument,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Compare a model with its isogenous partner.
    #[command(allow_negative_numbers = true)]
    Isogeny {
        #[arg(long, value_enum)]
        model: IsogenySource,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        a: Option<FieldArg>,
        #[arg(long)]
        b: Option<FieldArg>,
    },
    /// Run a verification suite over a prime range.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[command(flatten)]
        range: RangeArgs,
        /// Emit only the records that failed.
        #[arg(long)]
        mismatches_only: bool,
    },
}

#[derive(Debug, Args)]
struct ParamArgs {
    #[arg(long)]
    a: Option<FieldArg>,
    #[arg(long)]
    b: Option<FieldArg>,
    #[arg(long)]
    d: Option<FieldArg>,
    #[arg(long)]
    lambda: Option<FieldArg>,
}

#[derive(Debug, Args)]
struct RangeArgs {
    /// Single prime; shorthand for --pmin P --pmax P.
    #[arg(long, conflicts_with_all = ["pmin", "pmax"])]
    p: Option<u64>,
    #[arg(long, default_value_t = 3)]
    pmin: u64,
    #[arg(long, required_unless_present = "p")]
    pmax: Option<u64>,
}

impl RangeArgs {
    fn bounds(&self) -> (u64, u64) {
        match self.p {
            Some(p) => (p, p),
            None => (self.pmin, self.pmax.expect("required by clap")),
        }
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(_) => Err("tolerance must be positive".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn dispatch(cli: Cli) -> Result<Outcome, CliError> {
    let cfg = RunConfig {
        format: cli.format,
        prime_ceiling: cli.prime_ceiling,
        unsafe_pmax: cli.unsafe_pmax,
        tolerance: cli.tolerance,
        jobs: cli.jobs.map(|j| j as usize),
    };
    match cli.command {
        Command::Count { model, p, params, method } => {
            let params = ModelParams { a: params.a, b: params.b, d: params.d, lambda: params.lambda };
            run_count(&cfg, p, model, &params, method)
        }
        Command::Hyper { p, upper, lower, x } => run_hyper(&cfg, p, &upper, &lower, x),
        Command::SpecialValues { lambda, range } => {
            let (lo, hi) = range.bounds();
            run_special_values(&cfg, lambda, lo, hi)
        }
        Command::Isogeny { model, p, a, b } => {
            run_isogeny(&cfg, p, model, &ModelParams { a, b, ..ModelParams::default() })
        }
        Command::Verify { suite, range, mismatches_only } => {
            let (lo, hi) = range.bounds();
            run_verify_scan(&cfg, suite, lo, hi, mismatches_only)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let outcome = match dispatch(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let mut stdout = std::io::stdout().lock();
    let written = stdout.write_all(&outcome.output).and_then(|_| match &outcome.summary {
        Some(s) if summary_on_stdout(format) => writeln!(stdout, "{s}"),
        _ => Ok(()),
    });
    if let Err(e) = written.and_then(|_| stdout.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    if let Some(s) = outcome.summary.as_ref().filter(|_| !summary_on_stdout(format)) {
        eprintln!("{s}");
    }
    if outcome.mismatch {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
