use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use narch_core::rl::{Mode, RewardScheme};
use narch_core::{LaurentSeries, Rational};

/// Exact experiments with Laurent-series rewards and significant orders.
#[derive(Debug, Parser)]
#[command(name = "narch", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare two series and print less, equal or greater.
    Compare {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_series)]
        lhs: LaurentSeries,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_series)]
        rhs: LaurentSeries,
    },
    /// Emit and verify the non-Archimedean witness prefix.
    Witness {
        /// Significance threshold.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        r: Rational,
        /// Number of chain elements.
        #[arg(long)]
        n: usize,
    },
    /// Measurement checks.
    #[command(subcommand)]
    Measure(MeasureCommand),
    /// Run the two-button delayed-gratification bandit.
    Bandit(BanditArgs),
}

#[derive(Debug, Subcommand)]
pub enum MeasureCommand {
    /// Check whether an assignment accurately measures a structure.
    Check {
        /// JSON file holding `structure` and `assignment`.
        #[arg(long)]
        input: PathBuf,
    },
    /// CSV of the minimal feasible top `f(y) − f(x0)` for N in a range.
    FeasibleTop {
        #[arg(long, default_value_t = 0)]
        from: u64,
        /// Inclusive upper end of the range.
        #[arg(long)]
        to: u64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        r: Rational,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// First index where a non-decreasing sequence gains less than `tol`.
    Plateau {
        /// JSON array of rationals.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        tol: Rational,
    },
}

#[derive(Debug, Args)]
pub struct BanditArgs {
    /// `laurent`, `approx:<M>` or `dynamic:<M>`.
    #[arg(long, value_parser = parse_scheme, required_unless_present = "config")]
    pub scheme: Option<RewardScheme>,
    /// `scripted` or `egreedy`.
    #[arg(long, value_parser = parse_mode, required_unless_present = "config")]
    pub mode: Option<Mode>,
    #[arg(long, required_unless_present = "config")]
    pub steps: Option<u64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    pub epsilon: Option<Rational>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    pub discount: Option<Rational>,
    /// Run configuration as JSON; excludes the individual flags.
    #[arg(long, conflicts_with_all = ["scheme", "mode", "steps", "epsilon", "seed", "discount"])]
    pub config: Option<PathBuf>,
    /// Output directory for `trace.csv` and `summary.json`.
    #[arg(long)]
    pub out: PathBuf,
}

fn parse_series(text: &str) -> Result<LaurentSeries, String> {
    text.parse()
        .map_err(|e: narch_core::ParseError| e.to_string())
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    text.parse()
        .map_err(|e: narch_core::ParseError| e.to_string())
}

fn parse_scheme(text: &str) -> Result<RewardScheme, String> {
    text.parse().map_err(|e: narch_core::Error| e.to_string())
}

fn parse_mode(text: &str) -> Result<Mode, String> {
    text.parse().map_err(|e: narch_core::Error| e.to_string())
}
