use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubemedian::{Tier, DEFAULT_VERTEX_CAP};
use serde::{Serialize, Serializer};

/// Queries and experiments on right-angled Coxeter groups and median graphs.
///
/// Every subcommand except export-dot prints a JSON report. Exit status is 0
/// on success, 1 on usage or domain errors and 2 when a resource cap is hit.
#[derive(Debug, Parser, Serialize)]
#[command(name = "cubemedian", version)]
pub struct Cli {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,

    #[command(subcommand)]
    #[serde(flatten)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct Common {
    /// Presentation JSON: {"generators": [...], "commuting": [[s, t], ...]}.
    #[arg(long, global = true, conflicts_with = "graph")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub presentation: Option<PathBuf>,

    /// Explicit graph JSON: {"vertices": n, "edges": [[u, v], ...]}; must be median.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<PathBuf>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,

    /// Add wall-clock time to the report (makes it nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,

    /// Seed for sampled property checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Largest vertex set any single step may materialize.
    #[arg(long, global = true, default_value_t = DEFAULT_VERTEX_CAP, value_parser = positive)]
    pub vertex_cap: usize,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// Check the input and run sampled distance, wall and median checks.
    Validate(ValidateArgs),
    /// Materialize a ball around the identity (or the basepoint).
    Ball(BallArgs),
    /// Distance between two vertices.
    Dist(DistArgs),
    /// Median of three vertices.
    Median(MedianArgs),
    /// Interval between two vertices, optionally with its geodesics.
    Interval(IntervalArgs),
    /// Walls separating two vertices.
    Walls(WallsArgs),
    /// Nearest-point projection to a convex set.
    Project(ProjectArgs),
    /// Thin-triangle constant over a ball.
    Delta(DeltaArgs),
    /// Certify that a ray spec reads a geodesic ray.
    RayValidate(RayValidateArgs),
    /// Vertices near x lying on geodesics from x to a boundary point.
    Geoset(GeosetArgs),
    /// Sizes of the Geo difference for growing radius.
    Geodiff(GeodiffArgs),
    /// Least recurring color strings along a ray.
    HfLeast(HfLeastArgs),
    /// Fingerprint of a ray at one string length.
    HfFp(HfFpArgs),
    /// Compare the fingerprints of two rays.
    HfCmp(HfCmpArgs),
    /// Class-size bound K, optionally checked against fingerprints.
    HfKbound(HfKboundArgs),
    /// DOT drawing of a ball, optionally with a Geo difference highlighted.
    ExportDot(ExportDotArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Ball(_) => "ball",
            Command::Dist(_) => "dist",
            Command::Median(_) => "median",
            Command::Interval(_) => "interval",
            Command::Walls(_) => "walls",
            Command::Project(_) => "project",
            Command::Delta(_) => "delta",
            Command::RayValidate(_) => "ray-validate",
            Command::Geoset(_) => "geoset",
            Command::Geodiff(_) => "geodiff",
            Command::HfLeast(_) => "hf-least",
            Command::HfFp(_) => "hf-fp",
            Command::HfCmp(_) => "hf-cmp",
            Command::HfKbound(_) => "hf-kbound",
            Command::ExportDot(_) => "export-dot",
        }
    }
}

fn positive(text: &str) -> Result<usize, String> {
    match text.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// A fixed thin-triangle constant or `estimate` to compute one over a ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaChoice {
    Fixed(usize),
    Estimate,
}

impl FromStr for DeltaChoice {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        if text == "estimate" {
            return Ok(DeltaChoice::Estimate);
        }
        text.parse()
            .map(DeltaChoice::Fixed)
            .map_err(|_| format!("expected a nonnegative integer or \"estimate\", got {text:?}"))
    }
}

impl fmt::Display for DeltaChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaChoice::Fixed(d) => write!(f, "{d}"),
            DeltaChoice::Estimate => f.write_str("estimate"),
        }
    }
}

impl Serialize for DeltaChoice {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct DeltaOpts {
    /// Thin-triangle constant, or "estimate".
    #[arg(long, default_value = "estimate")]
    pub delta: DeltaChoice,

    /// Ball radius for the estimate.
    #[arg(long, default_value_t = 3)]
    pub delta_radius: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TierArg {
    Strict,
    Slack,
}

impl From<TierArg> for Tier {
    fn from(t: TierArg) -> Tier {
        match t {
            TierArg::Strict => Tier::Strict,
            TierArg::Slack => Tier::Slack,
        }
    }
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct ValidateArgs {
    /// Random pairs and triples to check.
    #[arg(long, default_value_t = 64)]
    pub samples: usize,

    /// Sample from the ball of this radius.
    #[arg(long, default_value_t = 3)]
    pub radius: usize,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct BallArgs {
    #[arg(long)]
    pub radius: usize,

    /// Include every vertex in the report.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct DistArgs {
    #[arg(long)]
    pub word1: String,
    #[arg(long)]
    pub word2: String,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct MedianArgs {
    #[arg(long)]
    pub u: String,
    #[arg(long)]
    pub v: String,
    #[arg(long)]
    pub w: String,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct IntervalArgs {
    #[arg(long)]
    pub u: String,
    #[arg(long)]
    pub v: String,

    /// Also list geodesics, smallest colors first.
    #[arg(long)]
    pub geodesics: bool,

    #[arg(long, default_value_t = 1000, value_parser = positive)]
    pub geodesic_cap: usize,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct WallsArgs {
    #[arg(long)]
    pub u: String,
    #[arg(long)]
    pub v: String,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct ProjectArgs {
    #[arg(long)]
    pub v: String,

    /// Members separated by ';' (an empty member is the identity).
    #[arg(long)]
    pub set: String,

    /// Project to the convex hull of the set instead of requiring convexity.
    #[arg(long)]
    pub hull: bool,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct DeltaArgs {
    #[arg(long)]
    pub radius: usize,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct RayValidateArgs {
    /// Ray spec JSON: {"base": word, "preperiod": [...], "period": [...]}.
    #[arg(long)]
    pub spec: PathBuf,

    /// Prefix length checked for geodesicity.
    #[arg(long, default_value_t = 64, value_parser = positive)]
    pub depth: usize,

    /// Powers of the period checked for reducedness.
    #[arg(long, default_value_t = 6, value_parser = positive)]
    pub cert_power: usize,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct GeosetArgs {
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long)]
    pub radius: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub delta: DeltaOpts,
    #[arg(long, value_enum, default_value_t = TierArg::Strict)]
    pub tier: TierArg,

    /// Number of ray vertices every member must see geodesically.
    #[arg(long, default_value_t = 4, value_parser = positive)]
    pub window: usize,

    /// First ray depth of the window; defaults to R + d(x, base) + 2δ + 2.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub start: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct GeodiffArgs {
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub y: String,
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, value_parser = positive)]
    pub rmax: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub delta: DeltaOpts,
    #[arg(long, value_enum, default_value_t = TierArg::Strict)]
    pub tier: TierArg,
    #[arg(long, default_value_t = 4, value_parser = positive)]
    pub window: usize,

    /// Trailing radii with equal sizes needed to call the sizes stabilized.
    #[arg(long, default_value_t = 3, value_parser = positive)]
    pub stabilization: usize,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct HfOpts {
    /// Depth of the farthest ray vertex used.
    #[arg(long, default_value_t = 28, value_parser = positive)]
    pub depth: usize,

    /// Distinct distances a string must occur at to count as recurring.
    #[arg(long, default_value_t = 3, value_parser = positive)]
    pub threshold: usize,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct HfLeastArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, default_value_t = 4, value_parser = positive)]
    pub nmax: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub hf: HfOpts,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct HfFpArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, value_parser = positive)]
    pub n: usize,
    #[arg(long, default_value_t = 6)]
    pub radius: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub hf: HfOpts,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct HfCmpArgs {
    #[arg(long)]
    pub spec1: PathBuf,
    #[arg(long)]
    pub spec2: PathBuf,
    #[arg(long, value_parser = positive)]
    pub n: usize,
    #[arg(long, default_value_t = 6)]
    pub radius: usize,

    /// Largest translation length searched.
    #[arg(long, default_value_t = 3)]
    pub search_radius: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub hf: HfOpts,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct HfKboundArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub delta: DeltaOpts,

    /// Check K against the fingerprints of this ray for n = 1..nmax.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<PathBuf>,
    #[arg(long, default_value_t = 4, value_parser = positive)]
    pub nmax: usize,
    #[arg(long, default_value_t = 6)]
    pub radius: usize,
    #[arg(long, default_value_t = 3)]
    pub search_radius: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub hf: HfOpts,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct ExportDotArgs {
    /// Ball radius; the whole graph when omitted with --graph.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<usize>,

    /// Highlight the Geo difference of x and y toward this ray.
    #[arg(long, requires_all = ["x", "y", "radius"])]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<PathBuf>,
    #[arg(long, requires = "spec")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[arg(long, requires = "spec")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub delta: DeltaOpts,
    #[arg(long, value_enum, default_value_t = TierArg::Strict)]
    pub tier: TierArg,
    #[arg(long, default_value_t = 4, value_parser = positive)]
    pub window: usize,

    /// Refuse to draw more nodes than this.
    #[arg(long, default_value_t = 2000, value_parser = positive)]
    pub node_cap: usize,
}
