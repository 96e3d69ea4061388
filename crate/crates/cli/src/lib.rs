//! Command-line front end for `u6n-core`.

pub mod cache;
pub mod run;

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use u6n_core::LatticeMode;

pub use run::{run, Status};

/// Environment variable naming the default cache file.
pub const CACHE_ENV: &str = "U6N_CACHE";

#[derive(Debug, Parser)]
#[command(name = "u6n", version, about = "Subgroups, subgroup lattices and fuzzy subgroup counts of U_6n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Largest group order the brute-force oracle may tabulate
    #[arg(long, global = true, default_value_t = u6n_core::DEFAULT_ORACLE_LIMIT)]
    pub oracle_limit: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List all subgroups with their orders
    Subgroups(ListArgs),
    /// List the normal subgroups with their orders
    Normal(ListArgs),
    /// Per-length counts of proper chains ending at the whole group
    Chains(CountArgs),
    /// Number of (normal) fuzzy subgroups up to equivalence
    Count(CountArgs),
    /// Export the containment lattice as JSON and/or DOT
    Lattice(LatticeArgs),
    /// Cross-check every closed form against the brute-force oracle
    Verify(VerifyArgs),
    /// CSV sweep over a range of n
    Batch(BatchArgs),
}

#[derive(Debug, Args)]
pub struct ListArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::All)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = Relation::Tarnauceanu)]
    pub relation: Relation,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Cache file for computed counts
    #[arg(long, env = CACHE_ENV)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::All)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the Hasse diagram as DOT to this path (`-` for stdout, replacing the JSON)
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_min: u64,
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_max: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BatchArgs {
    /// Inclusive range `A..B`
    #[arg(long)]
    pub range: NRange,
    #[arg(long, value_enum, default_value_t = ModeArg::All)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, env = CACHE_ENV)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    All,
    Normal,
}

impl From<ModeArg> for LatticeMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::All => LatticeMode::All,
            ModeArg::Normal => LatticeMode::Normal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Relation {
    Tarnauceanu,
    Murali,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Tarnauceanu => "tarnauceanu",
            Relation::Murali => "murali",
        }
    }
}

/// Inclusive range of `n`, written `A..B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub start: u64,
    pub end: u64,
}

impl NRange {
    pub fn iter(self) -> std::ops::RangeInclusive<u64> {
        self.start..=self.end
    }
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s
            .split_once("..")
            .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<u64>()
                .map_err(|_| format!("{x:?} is not a positive integer"))
        };
        let (start, end) = (parse(a)?, parse(b)?);
        if start == 0 {
            return Err("n must be at least 1".into());
        }
        if start > end {
            return Err(format!("empty range {start}..{end}"));
        }
        Ok(NRange { start, end })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_syntax() {
        assert_eq!("3..7".parse(), Ok(NRange { start: 3, end: 7 }));
        assert_eq!("5..5".parse::<NRange>().unwrap().iter().count(), 1);
        assert!("7..3".parse::<NRange>().is_err());
        assert!("0..3".parse::<NRange>().is_err());
        assert!("3-7".parse::<NRange>().is_err());
        assert!("a..b".parse::<NRange>().is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
