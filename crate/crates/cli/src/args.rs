use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "quatcount",
    version,
    about = "Counts of cusp forms on the quaternion algebra ramified at p and infinity"
)]
pub struct Cli {
    /// Directory holding `ss_<p>.json` enumeration caches.
    #[arg(
        long,
        global = true,
        env = "QUATCOUNT_CACHE",
        default_value = ".quatcount-cache"
    )]
    pub cache_dir: PathBuf,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Salt for the randomized root splitting. Never changes results.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One row of counts per (p, N).
    Table(TableArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Enumerate supersingular j-invariants and write cache files.
    Enumerate(PrimeArgs),
    /// Write Brandt matrices of T_2 and T_3 as JSON.
    Brandt(BrandtArgs),
}

#[derive(Debug, Clone, Args)]
pub struct PrimeArgs {
    /// A prime `11` or an inclusive range `5..100`.
    #[arg(long = "p")]
    pub p: Option<String>,
    /// Shorthand for `--p 5..MAX`.
    #[arg(long)]
    pub p_max: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct LevelArgs {
    /// A level `6` or an inclusive range `1..3`.
    #[arg(long = "n")]
    pub n: Option<String>,
    /// Shorthand for `--n 1..MAX`.
    #[arg(long)]
    pub n_max: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Formulas,
    Convolution,
    Enumeration,
    Hecke,
    All,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub primes: PrimeArgs,
    #[command(flatten)]
    pub levels: LevelArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// `enumeration` or `all` adds the enumeration route to every row.
    #[arg(long, value_enum, default_value_t = Suite::Formulas)]
    pub suite: Suite,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub primes: PrimeArgs,
    #[command(flatten)]
    pub levels: LevelArgs,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
}

#[derive(Debug, Args)]
pub struct BrandtArgs {
    #[command(flatten)]
    pub primes: PrimeArgs,
    /// 2 or 3; both when omitted.
    #[arg(long)]
    pub ell: Option<u64>,
    /// Output directory (default: the cache directory).
    #[arg(long)]
    pub out: Option<PathBuf>,
}
