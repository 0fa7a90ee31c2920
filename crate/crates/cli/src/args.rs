use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use nfc_core::normalizer::Policy;
use nfc_core::scalar::{parse_rational, Rational};

/// Default truncation order; supports stages up to 7.
pub const DEFAULT_ORDER: u32 = 13;

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "nfc",
    version,
    about = "Exact formal normal forms and resonances of infinite-type hypersurfaces in C^2"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic polynomial of the surface's 7-jet.
    Charpoly(CharpolyArgs),
    /// Integer resonances k >= 2 of the surface's 7-jet.
    Resonances(CharpolyArgs),
    /// Bring the surface to normal form through stage K.
    Normalize(NormalizeArgs),
    /// Apply a formal map to the surface.
    Transform(TransformArgs),
    /// Check that a map sends the surface onto a target (itself by default).
    VerifyMap(VerifyMapArgs),
    /// Check that a holomorphic vector field is tangent to the surface.
    VerifyField(VerifyFieldArgs),
    /// Run the built-in acceptance checks.
    Selftest(SelftestArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Charpoly(_) => "charpoly",
            Command::Resonances(_) => "resonances",
            Command::Normalize(_) => "normalize",
            Command::Transform(_) => "transform",
            Command::VerifyMap(_) => "verify-map",
            Command::VerifyField(_) => "verify-field",
            Command::Selftest(_) => "selftest",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Quadric,
    Cd,
    Mm,
    Mmt,
}

/// Where the surface comes from: a family, an inline expression or a file.
#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["family", "expr", "surface"])))]
pub struct SurfaceArgs {
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,

    /// Family parameter m (mm, mmt); also used by `--map ht` and `--field x`.
    #[arg(long)]
    pub m: Option<u32>,

    /// Family parameter T (mmt); also used by `--field x`.
    #[arg(long = "T", value_name = "T", value_parser = rational, allow_hyphen_values = true)]
    pub big_t: Option<Rational>,

    /// Family parameter C (cd).
    #[arg(long = "C", value_name = "C", value_parser = rational, allow_hyphen_values = true)]
    pub c: Option<Rational>,

    /// Family parameter D (cd).
    #[arg(long = "D", value_name = "D", value_parser = rational, allow_hyphen_values = true)]
    pub d: Option<Rational>,

    /// Polynomial in z, zb, u, e.g. "u*(z*zb + 1/4*z^2*zb^2)".
    #[arg(long)]
    pub expr: Option<String>,

    /// Surface spec file (JSON).
    #[arg(long, value_name = "FILE")]
    pub surface: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TotalOrder {
    /// Truncation order N [default: 13, or the spec file's order].
    #[arg(long = "order-total", visible_alias = "order", value_name = "N")]
    pub order_total: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MatrixChoice {
    /// Matrices consistent with the probed stage systems.
    Derived,
    /// The matrices as printed in the literature.
    Displayed,
}

#[derive(Debug, Args)]
pub struct CharpolyArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[command(flatten)]
    pub order: TotalOrder,
    #[arg(long, value_enum, default_value_t = MatrixChoice::Derived)]
    pub matrix: MatrixChoice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolicyChoice {
    Strict,
    GaugeZero,
}

impl From<PolicyChoice> for Policy {
    fn from(p: PolicyChoice) -> Self {
        match p {
            PolicyChoice::Strict => Policy::Strict,
            PolicyChoice::GaugeZero => Policy::GaugeZero,
        }
    }
}

#[derive(Debug, Args)]
pub struct NormalizeArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,

    /// Truncation order N [default: 13, or the spec file's order].
    #[arg(long = "order-total", value_name = "N")]
    pub order_total: Option<u32>,

    /// Last stage K to normalize [default: N - 6].
    #[arg(long = "order", value_name = "K")]
    pub stages: Option<u32>,

    #[arg(long, value_enum, default_value_t = PolicyChoice::Strict)]
    pub policy: PolicyChoice,

    /// Report normal form coefficients up to this total degree [default: N].
    #[arg(long, value_name = "D")]
    pub display_degree: Option<u32>,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    /// `ht` (uses --m and --t) or a map spec file.
    #[arg(long, value_name = "ht|FILE")]
    pub map: String,

    /// Parameter t of the builtin `ht`.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub t: Option<Rational>,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[command(flatten)]
    pub order: TotalOrder,
    #[command(flatten)]
    pub map: MapArgs,
}

#[derive(Debug, Args)]
pub struct VerifyMapArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[command(flatten)]
    pub order: TotalOrder,
    #[command(flatten)]
    pub map: MapArgs,

    /// Target surface spec file [default: the input surface].
    #[arg(long, value_name = "FILE")]
    pub target: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyFieldArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[command(flatten)]
    pub order: TotalOrder,

    /// `x` (uses --m and --T), `x-displayed`, or a field spec file.
    #[arg(long, value_name = "x|x-displayed|FILE")]
    pub field: String,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Run a single criterion (1 to 10).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=10))]
    pub criterion: Option<u32>,
}
