use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polycount_core::counting::CountingParams;
use polycount_core::oracle::DEFAULT_GUARD;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "polycount",
    version,
    about = "Count irreducible polynomials of a given total degree over F_q"
)]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    /// Fractional digits for ratios
    #[arg(long, global = true, default_value_t = 5,
          value_parser = clap::value_parser!(u32).range(1..=10_000))]
    pub precision: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// N, I, R and every S_k for one degree
    Count(CountArgs),
    /// Rows d = 1..dmax with N, I, I/N and the predicted density
    Table(TableArgs),
    /// Check the recursion against brute-force enumeration (prime q only)
    Verify(VerifyArgs),
    /// Compare 1 - I/N with its asymptotic prediction for d = 2..dmax
    Asymptotic(RangeArgs),
    /// List partitions of d, or count them
    Partitions(PartitionArgs),
    /// Dump the normalized irreducibles of degree d as hex canonical bytes
    Irreducibles(IrreducibleArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Field size, a prime power
    #[arg(long)]
    pub q: u64,
    /// Number of variables
    #[arg(long, default_value_t = 2)]
    pub m: u32,
}

#[derive(Debug, Clone, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Total degree
    #[arg(long)]
    pub d: u32,
}

#[derive(Debug, Clone, Args)]
pub struct RangeArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Largest degree
    #[arg(long, visible_alias = "d-max")]
    pub dmax: u32,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub range: RangeArgs,
    /// Also write the full count table (with every S_k) as JSON to this file
    #[arg(long)]
    pub export: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub range: RangeArgs,
    /// Largest candidate space p^(monomials) the oracle may enumerate
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    pub guard: u64,
}

#[derive(Debug, Clone, Args)]
pub struct PartitionArgs {
    #[arg(long)]
    pub d: u32,
    /// Only partitions into exactly k parts
    #[arg(long)]
    pub k: Option<u32>,
    /// Print the number of partitions instead of listing them
    #[arg(long)]
    pub count: bool,
}

#[derive(Debug, Clone, Args)]
pub struct IrreducibleArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub d: u32,
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    pub guard: u64,
}

/// Validated settings shared by the counting subcommands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: CountingParams,
    /// `d` for `count`, `dmax` for the range commands.
    pub degree: u32,
    pub format: OutputFormat,
    pub precision: u32,
    pub guard: u64,
}

impl RunConfig {
    pub fn new(
        field: &FieldArgs,
        degree: u32,
        cli: &Cli,
        guard: Option<u64>,
    ) -> Result<Self, CliError> {
        let params = CountingParams::new(field.q, field.m)?;
        if degree < 1 {
            return Err(polycount_core::Error::InvalidDegree(degree).into());
        }
        Ok(RunConfig {
            params,
            degree,
            format: cli.format,
            precision: cli.precision,
            guard: guard.unwrap_or(DEFAULT_GUARD),
        })
    }
}
