//! `pareto-records`: simulations of multivariate Pareto records, expected
//! generator counts, bound checks and oracle cross-checks.
//!
//! Exit codes: 0 success, 1 runtime or verification failure, 2 usage error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pareto_records::{Scale, Variant};

#[derive(Parser)]
#[command(name = "pareto-records", version, about = "Simulate multivariate Pareto records and check generator counts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate records and write one CSV row per record, plus a JSON ledger.
    Simulate(SimulateArgs),
    /// Tally how many current records each new record breaks.
    Table1(Table1Args),
    /// Exact, Poissonized and asymptotic expected generator counts.
    Expected(ExpectedArgs),
    /// Generator-count bounds, the lower-bound witness and the two-record census.
    BoundsCheck(BoundsArgs),
    /// Compare all four ways of computing the generators on random instances.
    OracleCompare(OracleArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long = "dim", short = 'd')]
    dim: usize,
    #[arg(long = "records", short = 'm')]
    records: u64,
    #[arg(long, short = 's')]
    seed: u64,
    /// naive, efficient or bivariate (d = 2 only).
    #[arg(long)]
    variant: Option<Variant>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    run: RunArgs,
    /// uniform, or exponential (-ln(1 - u)) for runs too long for double
    /// precision near the far corner of the cube.
    #[arg(long, default_value = "uniform")]
    scale: Scale,
    /// Record CSV; the ledger goes to `<out>.ledger.json`.
    #[arg(long, default_value = "records.csv")]
    out: PathBuf,
    /// Also dump the final generators as JSON.
    #[arg(long)]
    snapshot: Option<PathBuf>,
}

#[derive(Args)]
struct Table1Args {
    #[command(flatten)]
    run: RunArgs,
    #[arg(long, default_value = "exponential")]
    scale: Scale,
    /// Write the tally here (with a ledger) instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExpectedArgs {
    #[arg(long = "dim", short = 'd')]
    dim: usize,
    /// Comma-separated observation counts.
    #[arg(long = "n-list", value_delimiter = ',', required = true)]
    n_list: Vec<u64>,
    #[arg(long)]
    asymptotic: bool,
    #[arg(long)]
    poissonized: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long = "dim", short = 'd')]
    dim: usize,
    #[arg(long)]
    rho: Option<u64>,
    /// Brute-force the generator counts two records can leave.
    #[arg(long = "census-rho2")]
    census_rho2: bool,
    /// Build the lower-bound configuration for `--rho` records and count its generators.
    #[arg(long)]
    witness: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long = "dim", short = 'd', default_value_t = 4)]
    dim: usize,
    #[arg(long, default_value_t = 2)]
    rho: usize,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, short = 's', default_value_t = 0)]
    seed: u64,
    /// Check only the fixed four-dimensional instance with records
    /// (0.2, 0.8, 0.3, 0.7) and (0.5, 0.1, 0.4, 0.6).
    #[arg(long)]
    example: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(a) => commands::simulate(a),
        Command::Table1(a) => commands::table1(a),
        Command::Expected(a) => commands::expected(a),
        Command::BoundsCheck(a) => commands::bounds_check(a),
        Command::OracleCompare(a) => commands::oracle_compare(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
