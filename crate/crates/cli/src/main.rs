//! `discord`: quantum discord, classical correlation and mutual information
//! of two-qubit states.
//!
//! Exit codes: 0 success, 1 a verify suite failed, 2 bad arguments or input
//! file, 3 the input is not a valid state.

mod input;
mod range;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use discord::bounds::{bound_comparison_scan, StateFamily};
use discord::optimizer::{MAX_TOLERANCE, MIN_TOLERANCE};
use discord::verify::{run_suite, Suite};
use discord::{quantum_discord_with, OptimizerOptions};

use input::{parse_state, InputError};
use range::{Range, Ray};

#[derive(Parser)]
#[command(name = "discord", version, about = "Quantum discord of two-qubit states")]
struct Cli {
    /// Grid step for the direction search, in degrees, in (0, 22.5].
    #[arg(long, global = true, default_value_t = 1.0)]
    resolution: f64,
    /// Target tangential gradient residual of the refinement, in [1e-12, 1e-3].
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Output format; defaults to text, or csv for scans.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse the state in a JSON file.
    Compute { file: PathBuf },
    /// Tabulate discord against its upper bounds over a state family.
    Scan {
        #[command(subcommand)]
        family: Family,
    },
    /// Run seeded self-check suites.
    Verify {
        /// Run only this suite: identity, gradient, oracle, bounds, symmetry.
        #[arg(long)]
        suite: Option<Suite>,
        /// Cases per suite.
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Subcommand)]
enum Family {
    /// ρ(a, b); rows are ordered with a outer and b inner.
    Ab {
        #[arg(long, allow_hyphen_values = true)]
        a: Range,
        #[arg(long, allow_hyphen_values = true)]
        b: Range,
    },
    /// Bell-diagonal states t = s·ray; param2 is t_max.
    BellDiagonal {
        #[arg(long, allow_hyphen_values = true, default_value = "1,-1,1")]
        ray: Ray,
        #[arg(long, allow_hyphen_values = true)]
        s: Range,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

fn options(cli: &Cli) -> Result<OptimizerOptions, Failure> {
    if !(cli.resolution > 0.0 && cli.resolution <= 22.5) {
        return Err(Failure::usage(format!("--resolution {} outside (0, 22.5] degrees", cli.resolution)));
    }
    if !(MIN_TOLERANCE..=MAX_TOLERANCE).contains(&cli.tolerance) {
        return Err(Failure::usage(format!("--tolerance {:e} outside [1e-12, 1e-3]", cli.tolerance)));
    }
    OptimizerOptions::new(cli.resolution.to_radians(), cli.tolerance).map_err(|e| Failure::usage(e.to_string()))
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    let opts = options(cli)?;
    match &cli.command {
        Command::Compute { file } => {
            let text = std::fs::read_to_string(file).map_err(|e| Failure::usage(format!("cannot read {}: {e}", file.display())))?;
            let rho = parse_state(&text).map_err(|e| match e {
                InputError::Parse(m) => Failure::usage(format!("{}: {m}", file.display())),
                InputError::NotAState(e) => Failure { code: 3, message: format!("{}: {e}", file.display()) },
            })?;
            let r = quantum_discord_with(&rho, &opts);
            let out = match cli.format.unwrap_or(Format::Text) {
                Format::Json => report::compute_json(&r),
                Format::Csv => report::compute_csv(&r),
                Format::Text => report::compute_text(&r),
            };
            Ok((out, 0))
        }
        Command::Scan { family } => {
            let (fam, params) = match family {
                Family::Ab { a, b } => {
                    let params: Vec<(f64, f64)> = a.0.iter().flat_map(|&a| b.0.iter().map(move |&b| (a, b))).collect();
                    (StateFamily::Ab, params)
                }
                Family::BellDiagonal { ray, s } => (StateFamily::BellDiagonalRay(ray.0), s.0.iter().map(|&s| (s, 0.0)).collect()),
            };
            let rows = bound_comparison_scan(&fam, &params, &opts).map_err(|e| Failure::usage(e.to_string()))?;
            let out = match cli.format.unwrap_or(Format::Csv) {
                Format::Json => report::scan_json(&rows),
                Format::Csv => report::scan_csv(&rows),
                Format::Text => report::scan_text(&rows),
            };
            Ok((out, 0))
        }
        Command::Verify { suite, n } => {
            let suites: Vec<Suite> = suite.map_or(Suite::ALL.to_vec(), |s| vec![s]);
            let reports: Vec<_> = suites.iter().map(|&s| run_suite(s, n.unwrap_or(s.default_cases()), cli.seed, &opts)).collect();
            let code = if reports.iter().all(|r| r.passed) { 0 } else { 1 };
            let out = match cli.format.unwrap_or(Format::Text) {
                Format::Json => report::verify_json(&reports),
                Format::Csv => report::verify_csv(&reports),
                Format::Text => report::verify_text(&reports),
            };
            Ok((out, code))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
