use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "warpgeo",
    version,
    about = "Weighted geometry of warped model spaces and immersed submanifolds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Checks on a single model space.
    Model {
        #[command(subcommand)]
        action: ModelAction,
    },
    /// Tabulate the isoperimetric profile bound of a model.
    Profile(ProfileArgs),
    /// Run a verifier on a builtin case or a geometry file.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum ModelAction {
    /// Check the hypotheses placed on the warping function.
    Check(ModelCheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct WarpArgs {
    /// Warping function in `r`, e.g. "sinh(r)".
    #[arg(long)]
    pub warp: String,
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    /// Radius Λ of the model: a constant expression or "inf".
    #[arg(long, default_value = "inf")]
    pub radius: String,
}

#[derive(Debug, Clone, Args)]
pub struct ToleranceArgs {
    /// Relative tolerance of the adaptive quadrature.
    #[arg(long)]
    pub rel_tol: Option<f64>,
    /// Absolute tolerance of the adaptive quadrature.
    #[arg(long)]
    pub abs_tol: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ModelCheckArgs {
    #[command(flatten)]
    pub warp: WarpArgs,
    /// Also run the strict Aleksandrov and strictly-decreasing K checks.
    #[arg(long)]
    pub strict: bool,
    /// Radial grid "a:b:count[:log|lin]"; defaults to 256 log-spaced points.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long, default_value_t = 1e-4)]
    pub smooth_eps: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub smooth_tol: f64,
    #[command(flatten)]
    pub tol: ToleranceArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub warp: WarpArgs,
    /// Largest tabulated volume.
    #[arg(long)]
    pub vmax: String,
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
    #[command(flatten)]
    pub tol: ToleranceArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Jellett,
    Minkowski,
    Cmc,
    Hk,
    Kiso,
    Radius,
    Monotonicity,
    Minimal,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Jellett => "jellett",
            Check::Minkowski => "minkowski",
            Check::Cmc => "cmc",
            Check::Hk => "hk",
            Check::Kiso => "kiso",
            Check::Radius => "radius",
            Check::Monotonicity => "monotonicity",
            Check::Minimal => "minimal",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub check: Check,
    /// Builtin case, e.g. hyperbolic-ball or cross-model-disk.
    #[arg(long, conflicts_with = "geometry", required_unless_present = "geometry")]
    pub case: Option<String>,
    /// Geometry file in JSON.
    #[arg(long)]
    pub geometry: Option<PathBuf>,
    /// Size parameter of the builtin case.
    #[arg(long = "R", default_value_t = 1.0)]
    pub r: f64,
    /// Ambient preset for perturbed-graph and radial-plane,
    /// e.g. hyperbolic or spherical:4.
    #[arg(long, default_value = "hyperbolic")]
    pub preset: String,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random domains in a perturbed-graph batch.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Exponent of the k-isoperimetric quotient.
    #[arg(long, default_value_t = 2.0)]
    pub k: f64,
    /// Jellett branch: equal, le or ge. Derived from the curvatures if absent.
    #[arg(long)]
    pub expected: Option<String>,
    /// Radial grid for the monotonicity check.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long, default_value_t = 1024)]
    pub boundary: usize,
    #[arg(long, default_value_t = 512)]
    pub radial: usize,
    /// Also write per-sample h and curvature values as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}
