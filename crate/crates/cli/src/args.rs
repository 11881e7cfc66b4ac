//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "teneig",
    version,
    about = "Eigenpairs of real symmetric tensors via shifted power iteration"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run seeded multistart power iterations and summarize the eigenpairs found
    Solve(SolveArgs),
    /// Enumerate real eigenpairs by Newton multistart, with classification
    Enumerate(EnumerateArgs),
    /// Tabulate fixed-point spectral radii over a shift grid
    SweepAlpha(SweepArgs),
    /// Rasterize basins of attraction on the unit sphere (dimension 3 only)
    Basins(BasinsArgs),
    /// Emit the per-iteration eigenvalue trace of a single run
    Trace(TraceArgs),
    /// Audit a single candidate eigenpair
    Classify(ClassifyArgs),
}

/// Where the tensor comes from: a file or the built-in corpus.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Tensor file (format: `tensor <m> <n>` header, then index/value lines)
    #[arg(long, value_name = "FILE")]
    pub tensor: Option<PathBuf>,
    /// Built-in tensor: kore02, odd33, perm3, diag42, identity-<m>-<n>
    #[arg(long, value_name = "NAME")]
    pub builtin: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub source: Source,
    /// Shift value, or `auto` (conservative bound + 1) / `auto-neg` (its negative)
    #[arg(long, default_value = "auto", allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Stagnation tolerance on |lambda_{k+1} - lambda_k|
    #[arg(long, default_value_t = 1e-15)]
    pub tol: f64,
    /// Step tolerance on ||x_{k+1} - x_k||
    #[arg(long = "x-tol", default_value_t = 1e-10)]
    pub x_tol: f64,
    #[arg(long = "max-iters", default_value_t = 1000)]
    pub max_iters: usize,
    /// Use complex start vectors and the complex iteration
    #[arg(long)]
    pub complex: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Output file (stdout when omitted)
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub source: Source,
    /// Number of Newton starts
    #[arg(long, default_value_t = 5000)]
    pub starts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long = "alpha-min", allow_hyphen_values = true)]
    pub alpha_min: f64,
    #[arg(long = "alpha-max", allow_hyphen_values = true)]
    pub alpha_max: f64,
    #[arg(long = "alpha-steps")]
    pub alpha_steps: usize,
    /// Newton starts used to enumerate the eigenpairs to sweep
    #[arg(long, default_value_t = 5000)]
    pub starts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Explicit eigenpair `<lambda>:<x1,x2,...>` (repeatable; skips enumeration)
    #[arg(long = "pair", value_name = "PAIR", allow_hyphen_values = true)]
    pub pairs: Vec<String>,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BasinsArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value = "auto", allow_hyphen_values = true)]
    pub alpha: String,
    /// Raster size as WxH
    #[arg(long, default_value = "360x180")]
    pub resolution: String,
    #[arg(long, default_value_t = 1e-15)]
    pub tol: f64,
    #[arg(long = "x-tol", default_value_t = 1e-10)]
    pub x_tol: f64,
    #[arg(long = "max-iters", default_value_t = 1000)]
    pub max_iters: usize,
    /// Output prefix: writes <PREFIX>.ppm and <PREFIX>.legend.csv
    #[arg(long, value_name = "PREFIX")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct TraceArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value = "auto", allow_hyphen_values = true)]
    pub alpha: String,
    /// Explicit start vector `v1,v2,...` (normalized before use)
    #[arg(long, value_name = "VEC", allow_hyphen_values = true)]
    pub x0: Option<String>,
    /// Seed for a random start when --x0 is absent
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-15)]
    pub tol: f64,
    #[arg(long = "x-tol", default_value_t = 1e-10)]
    pub x_tol: f64,
    #[arg(long = "max-iters", default_value_t = 1000)]
    pub max_iters: usize,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: f64,
    /// Candidate eigenvector `v1,v2,...`
    #[arg(long, value_name = "VEC", allow_hyphen_values = true)]
    pub x: String,
    /// Pass/fail tolerance on the residual and the norm error
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Shifts at which to report the iteration-map spectral radius
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    pub alphas: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}
