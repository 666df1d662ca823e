use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "levy", version, about = "One-sided Lévy stable densities and the Lévy-smashed gamma family")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate f_α on a grid for one index.
    Density(DensityArgs),
    /// Tabulate f_α for several α side by side.
    Table(TableArgs),
    /// Compare equivalent representations of a rational α against the oracle.
    Compare(CompareArgs),
    /// Evaluate the Lévy-smashed gamma density and distribution function.
    Smash(SmashArgs),
    /// Run the verification checks and print a JSON report.
    Verify(VerifyArgs),
    /// Write the four gamma / smashed-gamma comparison files.
    Figure1(Figure1Args),
}

/// Selects an index as `(p, q, l1, l2)`, a decimal α, or a rational α.
#[derive(Args, Debug, Clone)]
pub struct IndexArgs {
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub l1: Option<u32>,
    #[arg(long)]
    pub l2: Option<u32>,
    /// Decimal α; the simplest (p, q, l1, l2) within 1e-12 is used.
    #[arg(long, conflicts_with_all = ["p", "q", "alpha_rational"])]
    pub alpha: Option<f64>,
    /// Rational α as `p/q`.
    #[arg(long, value_name = "P/Q", conflicts_with_all = ["p", "q"])]
    pub alpha_rational: Option<String>,
    /// Which representation of a rational α: 1 is (p,q,1,1), k is (p^k,q^k,k,1).
    #[arg(long, default_value_t = 1)]
    pub rep: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scale {
    Lin,
    Log,
}

#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    /// Explicit points, comma separated or repeated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub x: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub x_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub x_max: Option<f64>,
    #[arg(long, default_value_t = 50)]
    pub count: usize,
    #[arg(long, value_enum, default_value_t = Scale::Log)]
    pub scale: Scale,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct TolArgs {
    /// Relative stopping tolerance of the series.
    #[arg(long, default_value_t = 1e-13)]
    pub rel_tol: f64,
    /// Relative error accepted from the extended-precision retry.
    #[arg(long, default_value_t = 1e-8)]
    pub certify_rel: f64,
    /// Absolute agreement floor between the two oracle methods.
    #[arg(long, default_value_t = 1e-300)]
    pub oracle_abs_tol: f64,
    /// Fail instead of falling back to the quadrature oracle.
    #[arg(long)]
    pub no_oracle_fallback: bool,
}

#[derive(Args, Debug)]
pub struct DensityArgs {
    #[command(flatten)]
    pub index: IndexArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub tol: TolArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Comma-separated α values.
    #[arg(long, value_delimiter = ',', required = true)]
    pub alphas: Vec<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub tol: TolArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[command(flatten)]
    pub index: IndexArgs,
    /// Number of equivalent representations to compare; ignored with --single.
    #[arg(long, default_value_t = 3)]
    pub forms: usize,
    /// Compare only the representation chosen by --rep (or the given index).
    #[arg(long)]
    pub single: bool,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub tol: TolArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SmashArgs {
    #[arg(long)]
    pub alpha: f64,
    /// Gamma shape γ (the process time t).
    #[arg(long)]
    pub gamma: f64,
    /// Tabulate the Laplace transform at these points instead of the density.
    #[arg(long, value_delimiter = ',')]
    pub y: Vec<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    All,
    Normalization,
    Laplace,
    GaussLegendre,
    Attraction,
    Median,
    SmashedRows,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = CheckName::All)]
    pub check: CheckName,
    /// Restrict α-dependent checks to this α.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Restrict the Laplace and attraction checks to this y.
    #[arg(long)]
    pub y: Option<f64>,
    /// Restrict the median check to this μ.
    #[arg(long)]
    pub mu: Option<f64>,
    /// Override the tolerance of every selected check.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Figure1Args {
    /// Directory receiving figure1_gamma{1,2,3,4}.csv.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Points on (0, 10].
    #[arg(long, default_value_t = 500)]
    pub points: usize,
}
