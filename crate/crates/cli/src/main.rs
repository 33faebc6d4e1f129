//! `affmult`: batch front end for the affine type A multiplicity library.

mod commands;
mod output;

use std::io;
use std::process::ExitCode;

use affmult::Rational;
use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "affmult", version, about = "Outer multiplicities for level-one tensor products of affine A_n^(1)")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "table", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

/// A level-two weight `Σ h_k Λ_k + dδ`.
#[derive(Args, Debug, Clone)]
pub struct WeightArgs {
    /// Values on `h_0, …, h_n`, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub cvals: Vec<i64>,
    /// Degree `ξ(d)`, an integer or `p/q`.
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_rational)]
    pub degree: Rational,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count MW tableaux with a given content character, by formula and by enumeration.
    Tau {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        /// Content character `η_0, …, η_n`.
        #[arg(long, value_delimiter = ',', required = true)]
        eta: Vec<u32>,
    },
    /// The dominant weight of the orbit of `ℓΛ_0 + w_0 μ`.
    Socle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        level: i64,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        mu: Vec<i64>,
    },
    /// The pair `(m, p)` of a finite weight at a level, with its socle.
    Orbit {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        level: i64,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        mu: Vec<i64>,
    },
    /// The members of `Γ_ξ` that contribute to `[V(Λ_0) ⊗ V(Λ_i) : V(ξ)]`.
    Gamma {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[command(flatten)]
        xi: WeightArgs,
    },
    /// The level one to level two Demazure flag multiplicity `[D(1,λ) : D(2,μ)]`.
    FlagMult {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<i64>,
        #[arg(long, value_delimiter = ',', required = true)]
        mu: Vec<i64>,
        /// Report only the coefficient of `q^r`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        r: Option<Rational>,
    },
    /// `[V(Λ_0) ⊗ V(Λ_i) : V(ξ)]`.
    Multiplicity {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[command(flatten)]
        xi: WeightArgs,
        /// Also decompose with the character oracle and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// The cofinal flag-multiplicity sequences converging to the multiplicity.
    Limit {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[command(flatten)]
        xi: WeightArgs,
        #[arg(long, default_value_t = 12)]
        k_max: u32,
    },
    /// The decomposition of `V(Λ_i) ⊗ V(Λ_j)` down to a depth.
    TensorGeneral {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long, default_value_t = 4)]
        depth: u32,
        /// Also decompose with the character oracle and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Cross-check formula, tableaux, oracle and limit over a range.
    Verify {
        /// A rank or an inclusive range `a..b`.
        #[arg(long, value_parser = parse_range)]
        n: (usize, usize),
        #[arg(long, default_value_t = 4)]
        eta0_max: u32,
        /// Instances with `η_0` up to this depth are also checked by the oracle.
        #[arg(long, default_value_t = 3)]
        oracle_depth: u32,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse::<Rational>().map_err(|e| format!("`{s}` is not an integer or p/q: {e}"))
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("`{s}` is not a rank or a range a..b");
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
        }
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo == 0 || lo > hi {
        return Err(format!("`{s}` needs 1 <= a <= b"));
    }
    Ok((lo, hi))
}

/// Failures mapped onto exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad parameters; exit code 2.
    Validation(String),
    /// Two routes disagree; exit code 1. The report is still printed.
    Mismatch(Box<output::Report>, String),
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("AFFMULT_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Validation(format!("AFFMULT_THREADS: `{value}` is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Validation(format!("AFFMULT_THREADS: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|()| commands::run(&cli.command));
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match outcome {
        Ok(report) => match report.render(cli.format, &mut out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Mismatch(report, msg)) => {
            let _ = report.render(cli.format, &mut out);
            eprintln!("mismatch: {msg}");
            ExitCode::from(1)
        }
    }
}
