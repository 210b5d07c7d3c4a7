//! `pnt`: prime counting and Chebyshev function toolkit.
//!
//! One verb per verification workflow. Exit status: 0 all checks passed,
//! 1 at least one inequality violation found (conjecture violations
//! included), 2 usage or domain error, 3 capacity or overflow error.

mod output;

use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use pnt_core::chebyshev::{psi, psi_via_floor, s_function, theta, von_mangoldt};
use pnt_core::counting::{pi_fast, pi_sieve};
use pnt_core::factorial::ord_p_factorial;
use pnt_core::gaps::verify_gap_range;
use pnt_core::parallel::default_workers;
use pnt_core::verify::{
    verify_chain_range, verify_factorial_bounds, verify_ratio_window, verify_s_bound,
    SamplingPlan,
};
use pnt_core::Error as CoreError;

use output::{emit_csv, emit_json, interesting_outcomes, ReportDocument, ReportHeader, Rows};

/// Accepts plain integers and the `base^exp` shorthand (e.g. `10^7`).
fn parse_natural(s: &str) -> Result<u64, String> {
    let s = s.trim();
    if let Some((base, exp)) = s.split_once('^') {
        let base: u64 = base
            .trim()
            .parse()
            .map_err(|_| format!("invalid number `{s}`"))?;
        let exp: u32 = exp
            .trim()
            .parse()
            .map_err(|_| format!("invalid number `{s}`"))?;
        base.checked_pow(exp)
            .ok_or_else(|| format!("`{s}` does not fit 64 bits"))
    } else {
        s.parse().map_err(|_| format!("invalid number `{s}`"))
    }
}

#[derive(Parser)]
#[command(
    name = "pnt",
    version,
    about = "Prime counting and Chebyshev function toolkit",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count primes up to x
    Pi {
        #[arg(value_parser = parse_natural)]
        x: u64,
        /// Counting method: segmented sieve or sublinear recursion
        #[arg(long, value_enum, default_value_t = Method::Fast)]
        method: Method,
    },
    /// Evaluate theta(x), psi(x) (both routes) and S(x)
    Chebyshev {
        #[arg(value_parser = parse_natural)]
        x: u64,
    },
    /// Von Mangoldt function at n
    Lambda {
        #[arg(value_parser = parse_natural)]
        n: u64,
    },
    /// Exponent of the prime p in m!
    Ord {
        #[arg(value_parser = parse_natural)]
        p: u64,
        #[arg(value_parser = parse_natural)]
        m: u64,
    },
    /// Verify an inequality family over a range, reporting margins
    Verify {
        #[command(subcommand)]
        check: VerifyCheck,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Sieve,
    Fast,
}

#[derive(Subcommand)]
enum VerifyCheck {
    /// log 2 < pi(x) log x / x < 2 log 2 at every sampled x
    Ratio(SweepArgs),
    /// theta(x) <= psi(x) <= pi(x) log x and S(x) <= psi(x)
    Chain(SweepArgs),
    /// S(x)/x > log(x/(x+2)) - (2/x) log(x+2) + log 2
    Sbound(SweepArgs),
    /// Central binomial bounds and theta(n) < 2n log 2
    Lemmas(SweepArgs),
    /// Floor bounds on the prime count between consecutive squares
    Gap(SweepArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// First x of the sweep (inclusive)
    #[arg(long, value_parser = parse_natural)]
    from: u64,
    /// Last x of the sweep (inclusive)
    #[arg(long, value_parser = parse_natural)]
    to: u64,
    /// Check every k-th integer instead of all of them
    #[arg(long, value_parser = parse_natural, conflicts_with = "geometric")]
    stride: Option<u64>,
    /// Geometric sampling ratio (> 1) for sweeps far past 10^7
    #[arg(long)]
    geometric: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the report here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for partitioned sweeps (default: all cores)
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("pnt: {failure}");
            failure.exit_code()
        }
    }
}

enum Failure {
    Core(CoreError),
    Io(std::io::Error),
    Usage(String),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "{e}"),
            Failure::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(CoreError::Range { .. })
            | Failure::Core(CoreError::Domain { .. })
            | Failure::Core(CoreError::NotPrime(_))
            | Failure::Usage(_) => 2,
            Failure::Core(CoreError::Capacity { .. })
            | Failure::Core(CoreError::Overflow(_))
            | Failure::Io(_) => 3,
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn dispatch(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Pi { x, method } => {
            let count = match method {
                Method::Sieve => pi_sieve(x)?,
                Method::Fast => pi_fast(x)?,
            };
            println!("{count}");
            Ok(0)
        }
        Command::Chebyshev { x } => {
            println!("x,theta,psi,psi_via_floor,s");
            println!(
                "{x},{:.16e},{:.16e},{:.16e},{:.16e}",
                theta(x)?,
                psi(x)?,
                psi_via_floor(x)?,
                s_function(x)
            );
            Ok(0)
        }
        Command::Lambda { n } => {
            println!("{:.16e}", von_mangoldt(n));
            Ok(0)
        }
        Command::Ord { p, m } => {
            println!("{}", ord_p_factorial(p, m)?);
            Ok(0)
        }
        Command::Verify { check } => run_verify(check),
    }
}

fn run_verify(check: VerifyCheck) -> Result<i32, Failure> {
    let echo: String = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let args = match &check {
        VerifyCheck::Ratio(a)
        | VerifyCheck::Chain(a)
        | VerifyCheck::Sbound(a)
        | VerifyCheck::Lemmas(a)
        | VerifyCheck::Gap(a) => a,
    };
    let plan = match (args.stride, args.geometric) {
        (Some(k), _) => SamplingPlan::Stride(k),
        (_, Some(r)) => SamplingPlan::Geometric(r),
        _ => SamplingPlan::EveryInteger,
    };
    let workers = match args.workers {
        Some(0) => return Err(Failure::Usage("--workers must be >= 1".into())),
        Some(w) => w,
        None => default_workers(),
    };
    let (from, to) = (args.from, args.to);

    let doc = match &check {
        VerifyCheck::Ratio(_) => {
            let v = verify_ratio_window(from, to, &plan, workers)?;
            ReportDocument {
                header: ReportHeader::now(echo),
                outcomes: interesting_outcomes(&v.report),
                rows: Rows::Ratio(v.samples),
                report: v.report,
                stat_names: ("min_pi_ratio", "max_pi_ratio"),
            }
        }
        VerifyCheck::Chain(_) => {
            let (report, emitted) = verify_chain_range(from, to, &plan, workers)?;
            outcome_document(echo, report, emitted)
        }
        VerifyCheck::Sbound(_) => {
            let (report, emitted) = verify_s_bound(from, to, &plan, workers)?;
            outcome_document(echo, report, emitted)
        }
        VerifyCheck::Lemmas(_) => {
            let (report, emitted) = verify_factorial_bounds(from, to, &plan, workers)?;
            outcome_document(echo, report, emitted)
        }
        VerifyCheck::Gap(_) => {
            let v = verify_gap_range(from, to, &plan, workers)?;
            ReportDocument {
                header: ReportHeader::now(echo),
                outcomes: interesting_outcomes(&v.report),
                rows: Rows::Gap(v.records),
                report: v.report,
                stat_names: ("min_margin", "max_margin"),
            }
        }
    };

    let text = match args.format {
        Format::Csv => emit_csv(&doc),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&emit_json(&doc))
                .expect("report serialization cannot fail");
            s.push('\n');
            s
        }
    };
    match &args.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(if doc.report.has_violations() { 1 } else { 0 })
}

fn outcome_document(
    echo: String,
    report: pnt_core::BoundReport,
    emitted: Vec<pnt_core::CheckOutcome>,
) -> ReportDocument {
    let outcomes = if emitted.is_empty() {
        interesting_outcomes(&report)
    } else {
        emitted
    };
    ReportDocument {
        header: ReportHeader::now(echo),
        rows: Rows::None,
        outcomes,
        report,
        stat_names: ("min_margin", "max_margin"),
    }
}
