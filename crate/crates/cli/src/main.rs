//! `k3fib`: build, classify and verify the lattice-polarized K3 fibrations
//! from the command line.
//!
//! Exit status: 0 when every check passes, 1 on a mathematical mismatch,
//! 2 on a usage or input error.

mod commands;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use k3fib::fibrations::{FibrationClass, DEFAULT_BUDGET};

use commands::{CliError, Outcome};

#[derive(Parser, Debug)]
#[command(
    name = "k3fib",
    version,
    about = "Elliptic fibrations on K3 surfaces of lattice polarization H + E7 + E7"
)]
struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Number of random points for sampled checks.
    #[arg(long, global = true, default_value_t = 20)]
    points: usize,
    /// Term budget for symbolic expansions before falling back to points.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Where a point comes from: invariants, a raw sextuple, or a JSON file.
#[derive(Args, Debug, Clone, Default)]
pub struct PointArgs {
    /// Invariants J2,J3,J4,J5,J6 as comma-separated rationals.
    #[arg(long = "J", value_name = "LIST", allow_hyphen_values = true)]
    pub j: Option<String>,
    /// Square root a of J5^2 - 4 J4 J6 (standard branch).
    #[arg(long, value_name = "RAT", allow_hyphen_values = true, requires = "j")]
    pub a: Option<String>,
    /// Raw sextuple alpha,beta,gamma,delta,epsilon,zeta.
    #[arg(
        long,
        value_name = "LIST",
        allow_hyphen_values = true,
        conflicts_with = "j"
    )]
    pub params: Option<String>,
    /// JSON file holding either a sextuple or an invariant point.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["j", "params"])]
    pub file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a Weierstrass model with its discriminant.
    Build {
        class: FibrationClass,
        #[command(flatten)]
        point: PointArgs,
        /// Print the model with formal parameters instead of a point.
        #[arg(long, conflicts_with_all = ["j", "params", "file"])]
        symbolic: bool,
        /// With --symbolic, print the model in the sextuple parameters.
        #[arg(long, requires = "symbolic")]
        raw: bool,
        /// Square-root branch: + or -.
        #[arg(long, default_value = "+", allow_hyphen_values = true, value_parser = commands::parse_branch)]
        branch: k3fib::fibrations::Branch,
    },
    /// Classify the singular fibers of one fibration at a point.
    Classify {
        class: FibrationClass,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value = "+", allow_hyphen_values = true, value_parser = commands::parse_branch)]
        branch: k3fib::fibrations::Branch,
    },
    /// Reproduce the table of fiber configurations on every special locus.
    Table,
    /// Run the identity suite; FILTER keeps reports whose name starts with it.
    Verify { filter: Option<String> },
    /// Invariants of a sextuple and their weighted-projective label.
    Invariants {
        #[command(flatten)]
        point: PointArgs,
    },
    /// Heterotic gauge algebras of the dual branches at a point.
    Heterotic {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long)]
        class: Option<FibrationClass>,
    },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = k3fib::fibrations::SuiteConfig {
        seed: cli.seed,
        points: cli.points,
        budget: cli.budget,
    };
    match &cli.command {
        Command::Build {
            class,
            point,
            symbolic,
            raw,
            branch,
        } => commands::build(*class, point, *symbolic, *raw, *branch, cli.format),
        Command::Classify {
            class,
            point,
            branch,
        } => commands::classify(*class, point, *branch, cli.format),
        Command::Table => commands::table(cli.seed, cli.format),
        Command::Verify { filter } => commands::verify(&cfg, filter.as_deref(), cli.format),
        Command::Invariants { point } => commands::invariants(point, cli.format),
        Command::Heterotic { point, class } => commands::heterotic(point, *class, cli.format),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Io(path.display().to_string(), e.to_string())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| CliError::Io("stdout".into(), e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|o| emit(&cli, &o.text).map(|()| o.ok));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
