//! `logknap`: solve, verify, generate and benchmark log-linear knapsack
//! instances.
//!
//! Exit codes: 0 success, 1 bad input or flags, 2 the solver's own
//! certificate failed its check, 3 a solution failed verification.

mod bench;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use logknap::Method;

#[derive(Parser)]
#[command(name = "logknap", version, about = "Exact solver for the log-linear continuous knapsack problem")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and write the solution document.
    Solve {
        /// Instance file (JSON, or CSV when the name ends in .csv).
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        /// Solution file; standard output when omitted.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[arg(long, default_value = "sorted", value_parser = parse_method)]
        method: Method,
        /// Relative tolerance for ratio ties and boundary tests.
        #[arg(long, default_value_t = 1e-12)]
        eps: f64,
        /// Attach lambda/mu and check them before writing.
        #[arg(long)]
        with_certificate: bool,
        /// Tolerance of the self-check run by --with-certificate.
        #[arg(long, default_value_t = 1e-9)]
        kkt_tol: f64,
    },
    /// Check a solution document against an instance.
    Verify {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        #[arg(short = 's', long = "solution")]
        solution: PathBuf,
        /// Tolerance for every residual and feasibility test.
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
    },
    /// Write a seeded random instance.
    Gen {
        #[arg(short = 'L', long = "len")]
        len: usize,
        #[arg(long)]
        seed: u64,
        /// Capacity as a fraction of the total price, in (0, 1].
        #[arg(long, default_value_t = 0.6)]
        tightness: f64,
        /// Price range as lo,hi.
        #[arg(long, default_value = "1,10", value_parser = parse_range)]
        price_range: (f64, f64),
        /// Spread of the log-normal weights; 0 gives equal weights.
        #[arg(long, default_value_t = 0.0)]
        skew: f64,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Time all three methods and report deviations from the bisection oracle
    /// as CSV on standard output.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| format!("expected lo,hi, got '{s}'"))?;
    let num = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("'{v}': {e}"));
    Ok((num(lo)?, num(hi)?))
}

/// Why a command did not succeed; each maps to one exit code.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Certificate(String),
    Verification(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Certificate(_) => 2,
            Failure::Verification(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Certificate(m) | Failure::Verification(m) => m,
        }
    }
}

impl From<logknap::Error> for Failure {
    fn from(e: logknap::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(format!("{e:#}"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Solve {
            input,
            output,
            method,
            eps,
            with_certificate,
            kkt_tol,
        } => commands::solve(&input, output.as_deref(), method, eps, with_certificate, kkt_tol),
        Command::Verify {
            input,
            solution,
            eps,
        } => commands::verify(&input, &solution, eps),
        Command::Gen {
            len,
            seed,
            tightness,
            price_range,
            skew,
            output,
        } => commands::generate(
            logknap::io::GeneratorConfig {
                len,
                seed,
                tightness,
                price_range,
                weight_skew: skew,
            },
            output.as_deref(),
        ),
        Command::Bench { sizes, seed, reps } => bench::run(&sizes, seed, reps, &mut std::io::stdout()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
