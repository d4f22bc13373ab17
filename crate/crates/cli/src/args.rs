use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "skewnj",
    version,
    about = "Geometric constants of finite-dimensional normed spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Estimate one constant on one space.
    Compute(ComputeArgs),
    /// Run the verification suite on one space.
    Verify(VerifyArgs),
    /// Estimate the skew constant over a (xi, nu, p) grid.
    Sweep(SweepArgs),
    /// List the built-in space kinds.
    Catalog(CatalogArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    Lp,
    L1linf,
    WeightedC0,
    Polyhedral,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constant {
    SkewNj,
    SkewNjGlobal,
    GenNj,
    James,
    Delta,
    Eps0,
    Lyj,
    LyjPrime,
}

impl Constant {
    pub fn as_str(self) -> &'static str {
        match self {
            Constant::SkewNj => "skew-nj",
            Constant::SkewNjGlobal => "skew-nj-global",
            Constant::GenNj => "gen-nj",
            Constant::James => "james",
            Constant::Delta => "delta",
            Constant::Eps0 => "eps0",
            Constant::Lyj => "lyj",
            Constant::LyjPrime => "lyj-prime",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MethodArg {
    #[default]
    Auto,
    Extreme,
    Grid,
    Multistart,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct SpaceArgs {
    #[arg(long, value_enum)]
    pub space: SpaceKind,
    /// Exponent of the lp norm, in [1, inf].
    #[arg(long)]
    pub r: Option<f64>,
    /// Ambient dimension (default 2).
    #[arg(long)]
    pub dim: Option<usize>,
    /// Extreme-points file for a polyhedral space.
    #[arg(long)]
    pub points: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    #[arg(long, env = "SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    #[arg(long)]
    pub grid_steps: Option<usize>,
    #[arg(long)]
    pub starts: Option<usize>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    #[arg(long)]
    pub step_tol: Option<f64>,
    #[arg(long)]
    pub t_grid: Option<usize>,
    #[arg(long)]
    pub delta_starts: Option<usize>,
    /// Write results here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long, value_enum)]
    pub constant: Constant,
    #[arg(long)]
    pub xi: Option<f64>,
    #[arg(long)]
    pub nu: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    /// Distance for the modulus of convexity.
    #[arg(long)]
    pub eps: Option<f64>,
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub run: RunArgs,
    /// Size of the eps grid for the modulus checks (>= 16).
    #[arg(long)]
    pub eps_grid: Option<usize>,
    /// Number of midpoint-convexity triples.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// start:stop:steps
    #[arg(long, default_value = "1")]
    pub xi: String,
    /// start:stop:steps
    #[arg(long, default_value = "1")]
    pub nu: String,
    /// Comma-separated exponents.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub p: Vec<f64>,
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
