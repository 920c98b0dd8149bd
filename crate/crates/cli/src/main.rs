mod eval;
mod suites;
mod tables;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use schwarzian_core::coeff::DEFAULT_PRECISION;
use schwarzian_core::schwarzian::DEFAULT_SEED;

/// Hard cap on `--max` for `tables`.
pub const TABLE_CAP: usize = 20;

#[derive(Parser)]
#[command(name = "schwarzian", version, about = "Higher-order Schwarzian derivatives: tables, evaluation, verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    /// Exact rationals, falling back to floats when a value is transcendental.
    Auto,
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFamily {
    /// Tamanoi polynomials `P_n` in `x_k = q_k`.
    #[value(name = "P")]
    P,
    /// `sigma_n` in the Aharonov invariants.
    Sigma,
    /// Aharonov polynomials `Psi_n` in `x_k = q_k`.
    Psi,
    /// `S_n - S_{n-1}'` in lower `S_k`.
    Decomp,
}

#[derive(Subcommand)]
enum Command {
    /// Print the polynomial families.
    Tables {
        #[arg(long, value_enum)]
        family: TableFamily,
        #[arg(long, default_value_t = 6)]
        max: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate invariants of `f` at a base point.
    Eval(eval::EvalArgs),
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        /// Maximum order; defaults to 10 for symbolic and analytic suites, 6 for metric suites.
        #[arg(long)]
        max: Option<usize>,
        /// Residual tolerance on the float backend; defaults to 1e-15, 1e-12 for metric suites.
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: usize,
        #[arg(long, env = "SCHWARZIAN_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, value_enum, default_value = "auto")]
        backend: Backend,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] schwarzian_core::Error),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Tables { family, max, format } => tables::run(family, max, format).map(|text| (text, true)),
        Command::Eval(args) => eval::run(&args).map(|text| (text, true)),
        Command::Verify { suite, max, tolerance, precision, seed, trials, backend, format } => {
            let config = suites::Config { max, tolerance, precision, seed, trials, backend };
            suites::run(&suite, &config).map(|report| (report.render(format), report.pass))
        }
    };
    match outcome {
        Ok((text, pass)) => {
            // A closed pipe is not an error of the computation.
            let _ = writeln!(std::io::stdout(), "{text}");
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
