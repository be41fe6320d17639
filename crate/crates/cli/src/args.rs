use clap::{Args, Parser, Subcommand, ValueEnum};
use hahn_core::scalar::parse_rational;
use hahn_core::Scalar;

#[derive(Debug, Parser)]
#[command(
    name = "hahn",
    version,
    about = "Exact classification and verification for Pearson equations D_{q,ω}(φu) = ψu"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check admissibility and regularity up to depth N.
    Classify(CommonArgs),
    /// Emit β_n, γ_n and the monic orthogonal polynomials through depth N.
    Recurrence(CommonArgs),
    /// Emit the moments y_n = ⟨u, Y_n⟩ (and power moments) for n ≤ N.
    Moments(MomentArgs),
    /// Run exact verification suites.
    Verify(VerifyArgs),
    /// List the shipped presets.
    Presets(PresetArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Gram,
    Rodrigues,
    Norms,
    Identities,
    All,
}

fn rational(s: &str) -> Result<Scalar, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Clone, Debug, Args)]
pub struct CommonArgs {
    /// Coefficient of x² in φ.
    #[arg(long = "a", value_parser = rational, allow_hyphen_values = true)]
    pub a: Option<Scalar>,
    /// Coefficient of x in φ.
    #[arg(long = "b", value_parser = rational, allow_hyphen_values = true)]
    pub b: Option<Scalar>,
    /// Constant term of φ.
    #[arg(long = "c", value_parser = rational, allow_hyphen_values = true)]
    pub c: Option<Scalar>,
    /// Coefficient of x in ψ.
    #[arg(long = "d", value_parser = rational, allow_hyphen_values = true)]
    pub d: Option<Scalar>,
    /// Constant term of ψ.
    #[arg(long = "e", value_parser = rational, allow_hyphen_values = true)]
    pub e: Option<Scalar>,
    /// Frame parameter q.
    #[arg(long = "q", value_parser = rational, allow_hyphen_values = true)]
    pub q: Option<Scalar>,
    /// Frame parameter ω (defaults to 0 when --q is given).
    #[arg(long = "omega", value_parser = rational, allow_hyphen_values = true)]
    pub omega: Option<Scalar>,
    /// Depth N.
    #[arg(long = "n", env = "HAHN_DEPTH", default_value_t = 8)]
    pub depth: usize,
    /// Shipped preset, e.g. `meixner` or `charlier:mu=1/3`.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Clone, Debug, Args)]
pub struct MomentArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Value of ⟨u, 1⟩.
    #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "1")]
    pub y0: Scalar,
}

#[derive(Clone, Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Number of moments each test functional is checked against.
    #[arg(long = "test-degree", default_value_t = 8)]
    pub test_degree: usize,
    /// Value of ⟨u, 1⟩.
    #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "1")]
    pub y0: Scalar,
    /// Add 1 to the moment y_k before verifying.
    #[arg(long = "fuzz-moment")]
    pub fuzz_moment: Option<usize>,
}

#[derive(Clone, Debug, Args)]
pub struct PresetArgs {
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}
