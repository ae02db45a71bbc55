use clap::{Args, Parser, Subcommand, ValueEnum};

use selfpow::digits::DEFAULT_ORACLE_BOUND;
use selfpow::lnz_analysis::{DEFAULT_N_MAX, DEFAULT_T_MAX};

/// Last digit and last non-zero digit of n^n in base b.
#[derive(Debug, Parser)]
#[command(name = "selfpow", version, about)]
pub struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the last (or last non-zero) digit of n^n in base b.
    Digit(DigitArgs),
    /// Theoretical and measured period of the last-digit sequence.
    Period(PeriodArgs),
    /// Witness scan over a range of bases.
    Scan(ScanArgs),
    /// Run the built-in verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct DigitArgs {
    pub n: u64,
    pub b: u64,

    /// Last non-zero digit instead of last digit.
    #[arg(long)]
    pub last_nonzero: bool,

    /// Cross-check against exact big-integer evaluation (n <= oracle bound).
    #[arg(long)]
    pub verify: bool,

    #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
    pub oracle_bound: u64,
}

#[derive(Debug, Args)]
pub struct PeriodArgs {
    pub b: u64,

    /// Last index of the scanned window (default: 6 * H(b)).
    #[arg(long)]
    pub window: Option<u64>,

    /// First index of the scanned window.
    #[arg(long, default_value_t = 1)]
    pub window_start: u64,

    /// Also dump S_b(n) and the last non-zero digits for n_lo..=n_hi.
    #[arg(long, num_args = 2, value_names = ["N_LO", "N_HI"])]
    pub emit_sequence: Option<Vec<u64>>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Smallest base scanned.
    #[arg(long, default_value_t = 2)]
    pub bmin: u64,

    /// Largest base scanned.
    #[arg(long)]
    pub bmax: u64,

    /// Largest candidate period.
    #[arg(long, default_value_t = DEFAULT_T_MAX)]
    pub tmax: u64,

    /// Witness search bound.
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    pub nmax: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Props,
    Lemmas,
    Oracle,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,

    /// Largest base for the period suite.
    #[arg(long, default_value_t = 500)]
    pub props_bmax: u64,

    /// Largest n for the oracle grid.
    #[arg(long, default_value_t = 1500)]
    pub oracle_nmax: u64,

    /// Largest base for the oracle grid.
    #[arg(long, default_value_t = 100)]
    pub oracle_bmax: u64,

    #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
    pub oracle_bound: u64,
}
