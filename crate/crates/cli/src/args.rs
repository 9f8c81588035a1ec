use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "soperator",
    version,
    about = "Norm bounds for the finite-field S-operator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the exact identities for one (q, d) and report each check.
    Verify(VerifyArgs),
    /// Lower and upper bounds over an exponent grid and a list of q.
    Scan(ScanArgs),
    /// Evaluate ||g||_p, ||Sg||_s and their ratio for a function file.
    Norm(NormArgs),
    /// Vertices and half-spaces of the general or radial region.
    Region(RegionArgs),
    /// Distance sets of random point sets.
    Distance(DistanceArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Seed for every random experiment.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Output file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FieldArgs {
    /// Field order, an odd prime power.
    #[arg(long)]
    pub q: u32,
    /// Extension degree; must agree with q.
    #[arg(long)]
    pub alpha: Option<u32>,
    /// Modulus coefficients, constant term first, e.g. 1,0,1.
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Comma-separated suites or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Moment for the osc suite (even).
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Field orders, comma-separated.
    #[arg(long, alias = "q", value_delimiter = ',', required = true)]
    pub qs: Vec<u32>,
    /// Grid resolution N; exponents run over i/(N-1).
    #[arg(long, default_value_t = 9)]
    pub grid: usize,
    /// Comma-separated families, `all`, `subspaces`, or `sphere`.
    #[arg(long, default_value = "all")]
    pub families: String,
    /// Random trials behind the random_best family.
    #[arg(long, default_value_t = 8)]
    pub trials: usize,
    /// Add growth fits of log(lower) against log q.
    #[arg(long)]
    pub fit: bool,
    /// Where to write fits when the rows are CSV (default: next to --out).
    #[arg(long)]
    pub fit_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct NormArgs {
    /// GridFunction or RadialFunction JSON file.
    #[arg(long)]
    pub input: PathBuf,
    /// Input exponent: a number, a fraction such as 4/3, or inf.
    #[arg(long)]
    pub p: String,
    /// Output exponent.
    #[arg(long)]
    pub s: String,
    /// Expected field order of the input.
    #[arg(long)]
    pub q: Option<u32>,
    /// Expected dimension of the input.
    #[arg(long)]
    pub d: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionKindArg {
    General,
    Radial,
}

#[derive(Args, Debug)]
pub struct RegionArgs {
    #[arg(long, value_enum, default_value_t = RegionKindArg::General)]
    pub kind: RegionKindArg,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Also report membership of the point x,y (rationals, x = 1/p, y = 1/s).
    #[arg(long)]
    pub point: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct DistanceArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Number of points in each random set E.
    #[arg(long)]
    pub size: usize,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[command(flatten)]
    pub common: Common,
}
