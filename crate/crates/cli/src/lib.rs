//! Command-line front end for `polycount-core`.
//!
//! Subcommands: `count`, `table`, `verify`, `asymptotic`, `partitions` and
//! `irreducibles`. Every exact quantity is printed as a full decimal
//! integer; ratios are rendered from exact rationals.

pub mod args;
pub mod cache;
pub mod commands;
pub mod error;
pub mod render;

pub use args::{Cli, Command, OutputFormat};
pub use error::CliError;

/// Environment variable naming a JSON count table used to warm-start the recursion.
pub const CACHE_ENV: &str = "POLYCOUNT_CACHE";
