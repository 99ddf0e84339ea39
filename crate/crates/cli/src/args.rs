use clap::{Args, Parser, Subcommand, ValueEnum};
use zetakit::defaults;

#[derive(Debug, Parser)]
#[command(
    name = "zetakit",
    version,
    about = "Multiple zeta-star values with 2-3-1 indices"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Working precision in bits
    #[arg(long, global = true, default_value_t = defaults::BITS)]
    pub bits: u32,
    /// Truncation levels for extrapolation, comma separated
    #[arg(long, global = true, value_delimiter = ',')]
    pub ladder: Option<Vec<u64>>,
    /// Extrapolation order
    #[arg(long, global = true, default_value_t = defaults::ORDER)]
    pub order: usize,
    /// Worker threads; ZETAKIT_JOBS takes precedence
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Report format
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Largest denominator accepted by rational recognition
    #[arg(long = "max-den", global = true, default_value_t = defaults::MAX_DEN)]
    pub max_den: u64,
    /// Truncation level p (or P)
    #[arg(long, global = true)]
    pub trunc: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    #[value(name = "exact-p")]
    ExactP,
    Numeric,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate ζ or ζ* of an index or pattern
    Compute {
        /// Non-strict sum ζ* instead of ζ
        #[arg(long)]
        star: bool,
        /// Index such as 2,1,2
        #[arg(long, conflicts_with = "pattern", required_unless_present = "pattern")]
        index: Option<String>,
        /// Pattern such as "j=1,0;e=1"
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long, value_enum, default_value = "numeric")]
        mode: Mode,
    },
    /// Check one identity instance
    Verify {
        #[arg(value_enum)]
        identity: IdentityId,
        #[command(flatten)]
        params: Params,
    },
    /// Check every instance in a parameter grid
    Scan {
        #[arg(value_enum)]
        family: Family,
        /// Largest total weight for (m, n) families
        #[arg(long = "max-weight", default_value_t = 11)]
        max_weight: u32,
        /// Number of runs (or pairs) for vector families
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Largest run length for vector families
        #[arg(long, default_value_t = 1)]
        jmax: u32,
    },
}

#[derive(Debug, Args)]
pub struct Params {
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Run lengths, comma separated
    #[arg(long, value_delimiter = ',')]
    pub j: Option<Vec<u32>>,
    #[arg(long)]
    pub pattern: Option<String>,
    /// Exponents a,b,c for the ccbaa family
    #[arg(long, value_delimiter = ',')]
    pub abc: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IdentityId {
    Main1,
    Main2,
    Main3,
    #[value(name = "1ext")]
    Ext1,
    #[value(name = "3ext")]
    Ext3,
    Thm31,
    #[value(name = "two-one")]
    TwoOne,
    #[value(name = "22322")]
    Z22322,
    #[value(name = "22122")]
    Z22122,
    #[value(name = "prop-m0")]
    PropM0,
    #[value(name = "conjectureA")]
    ConjectureA,
    #[value(name = "conjectureB")]
    ConjectureB,
    Telescope,
    Ccbaa,
    #[value(name = "main2-finite")]
    Main2Finite,
    #[value(name = "prop-m0-finite")]
    PropM0Finite,
    #[value(name = "harmonic-finite")]
    HarmonicFinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Main1,
    Main2,
    Main3,
    #[value(name = "two-one")]
    TwoOne,
    #[value(name = "22322")]
    Z22322,
    #[value(name = "22122")]
    Z22122,
    #[value(name = "prop-m0")]
    PropM0,
    #[value(name = "1ext")]
    Ext1,
    #[value(name = "3ext")]
    Ext3,
    Thm31,
    Telescope,
    #[value(name = "conjectureA")]
    ConjectureA,
    #[value(name = "conjectureB")]
    ConjectureB,
}
