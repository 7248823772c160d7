//! Command-line grammar and its resolution into a validated `RunConfig`.
//!
//! Every option is optional at the clap layer; values are then resolved
//! as: explicit command line > `--config` file entry > documented
//! default. Required settings without a default produce a usage error
//! naming the flag.

use std::collections::BTreeMap;

use clap::{ArgAction, Args, CommandFactory, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "qreduce",
    version,
    about = "Quantum potentials of constrained motion on curves and surfaces",
    long_about = "Computes curvature-induced quantum potentials by closed form, by the \
normal-profile operator, and by thin-layer band simulations; inspects the \
constraint algebra; and compares quantization recipes for the sphere."
)]
pub(crate) struct Cli {
    /// Output format: text, csv or json.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Write the structured output to this path instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<String>,
    /// Read defaults from a `key = value` file (command line wins).
    #[arg(long, global = true)]
    pub config: Option<String>,
    #[command(subcommand)]
    pub command: TopCommand,
}

#[derive(Subcommand, Debug)]
pub(crate) enum TopCommand {
    /// Quantum potential of a curve, surface or latitude circle.
    Vq {
        #[command(subcommand)]
        target: VqTarget,
    },
    /// Constraint brackets and first/second class classification.
    Brackets(BracketsArgs),
    /// Discretized reduced spectrum on a closed curve.
    Spectrum {
        #[command(subcommand)]
        target: SpectrumTarget,
    },
    /// Side-by-side quantization recipe table.
    Recipes {
        #[command(subcommand)]
        target: RecipesTarget,
    },
    /// Thin-layer band simulations with energy renormalization.
    Layersim {
        #[command(subcommand)]
        target: LayersimTarget,
    },
}

#[derive(Subcommand, Debug)]
pub(crate) enum VqTarget {
    /// Plane curve at a parameter point.
    Curve(VqCurveArgs),
    /// Catalog surface at a parameter point.
    Surface(VqSurfaceArgs),
    /// Latitude circle on a sphere.
    Latitude(VqLatitudeArgs),
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub(crate) struct VqCurveArgs {
    /// Curve shape: line, circle, ellipse or parabola.
    #[arg(long)]
    shape: Option<String>,
    /// Circle radius.
    #[arg(long)]
    radius: Option<f64>,
    /// Ellipse semi-axis a.
    #[arg(long)]
    a: Option<f64>,
    /// Ellipse semi-axis b.
    #[arg(long)]
    b: Option<f64>,
    /// Parabola curvature radius at the vertex.
    #[arg(long)]
    scale: Option<f64>,
    /// Curve parameter of the evaluation point.
    #[arg(long)]
    t: Option<f64>,
    /// Action scale.
    #[arg(long)]
    hbar: Option<f64>,
    /// closed, profile or both.
    #[arg(long)]
    method: Option<String>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub(crate) struct VqSurfaceArgs {
    /// Surface shape: plane, sphere, cylinder or torus.
    #[arg(long)]
    shape: Option<String>,
    /// Sphere or cylinder radius.
    #[arg(long)]
    radius: Option<f64>,
    /// Torus center-circle radius.
    #[arg(long = "big-r")]
    big_r: Option<f64>,
    /// Torus tube radius.
    #[arg(long = "small-r")]
    small_r: Option<f64>,
    /// First surface parameter of the evaluation point.
    #[arg(long)]
    u: Option<f64>,
    /// Second surface parameter of the evaluation point.
    #[arg(long)]
    v: Option<f64>,
    /// Action scale.
    #[arg(long)]
    hbar: Option<f64>,
    /// closed, profile or both.
    #[arg(long)]
    method: Option<String>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub(crate) struct VqLatitudeArgs {
    /// Sphere radius.
    #[arg(long)]
    radius: Option<f64>,
    /// Polar angle of the latitude circle, in (0, pi).
    #[arg(long)]
    theta: Option<f64>,
    /// Action scale.
    #[arg(long)]
    hbar: Option<f64>,
    /// closed, profile or both.
    #[arg(long)]
    method: Option<String>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub(crate) struct BracketsArgs {
    /// Constraint system: sphere or sphere-abelian.
    #[arg(long)]
    system: Option<String>,
    /// Ambient dimension n of the sphere system.
    #[arg(long = "n")]
    dim: Option<usize>,
    /// Sphere radius.
    #[arg(long)]
    radius: Option<f64>,
    /// Number of deterministic on-shell sample points.
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub(crate) enum SpectrumTarget {
    /// Reduced spectrum of a circle.
    Circle(SpectrumCircleArgs),
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub(crate) struct SpectrumCircleArgs {
    /// Circle radius.
    #[arg(long)]
    radius: Option<f64>,
    /// Grid points of the periodic discretization.
    #[arg(long = "n-grid")]
    n_grid: Option<usize>,
    /// Number of eigenvalues to report.
    #[arg(long)]
    modes: Option<usize>,
    /// Include the quantum potential on the diagonal.
    #[arg(long = "with-vq", action = ArgAction::SetTrue)]
    with_vq: Option<bool>,
    /// Action scale.
    #[arg(long)]
    hbar: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub(crate) enum RecipesTarget {
    /// Compare quantization recipes on one geometry.
    Compare(RecipesCompareArgs),
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub(crate) struct RecipesCompareArgs {
    /// Geometry: sphere or circle.
    #[arg(long)]
    geometry: Option<String>,
    /// Radius.
    #[arg(long)]
    radius: Option<f64>,
    /// Highest level index listed.
    #[arg(long)]
    lmax: Option<u32>,
    /// Ambient dimension entering the Dirac constant (sphere only).
    #[arg(long = "n")]
    ambient_dim: Option<u32>,
    /// Action scale.
    #[arg(long)]
    hbar: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub(crate) enum LayersimTarget {
    /// Layer around a circle, decoupled by angular mode.
    Circle(LayersimCircleArgs),
    /// Flat strip control (all renormalized bands vanish).
    Strip(LayersimCommonArgs),
    /// Band around a latitude circle on a sphere.
    Latitude(LayersimLatitudeArgs),
    /// Full 2D layer around a closed plane curve.
    Curve2d(LayersimCurveArgs),
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub(crate) struct LayersimCommonArgs {
    /// Comma-separated layer thicknesses, e.g. 0.1,0.05,0.025.
    #[arg(long)]
    eps: Option<String>,
    /// Highest angular mode (or reported band count for curve2d).
    #[arg(long)]
    mmax: Option<u32>,
    /// Transverse basis size.
    #[arg(long)]
    ntrans: Option<usize>,
    /// Confinement: dirichlet or harmonic.
    #[arg(long)]
    confinement: Option<String>,
    /// Extrapolate the bands to zero thickness (needs >= 3 thicknesses).
    #[arg(long, action = ArgAction::SetTrue)]
    extrapolate: Option<bool>,
    /// Action scale.
    #[arg(long)]
    hbar: Option<f64>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub(crate) struct LayersimCircleArgs {
    /// Circle radius.
    #[arg(long)]
    radius: Option<f64>,
    #[command(flatten)]
    common: LayersimCommonArgs,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub(crate) struct LayersimLatitudeArgs {
    /// Sphere radius.
    #[arg(long)]
    radius: Option<f64>,
    /// Polar angle of the latitude circle.
    #[arg(long)]
    theta0: Option<f64>,
    #[command(flatten)]
    common: LayersimCommonArgs,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub(crate) struct LayersimCurveArgs {
    /// Closed curve shape: circle or ellipse.
    #[arg(long)]
    shape: Option<String>,
    /// Circle radius.
    #[arg(long)]
    radius: Option<f64>,
    /// Ellipse semi-axis a.
    #[arg(long)]
    a: Option<f64>,
    /// Ellipse semi-axis b.
    #[arg(long)]
    b: Option<f64>,
    /// Tangential basis size (odd).
    #[arg(long)]
    ntang: Option<usize>,
    #[command(flatten)]
    common: LayersimCommonArgs,
}

// ---------------------------------------------------------------------
// Resolved configuration
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VqMethod {
    Closed,
    Profile,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveShape {
    Line,
    Circle { radius: f64 },
    Ellipse { a: f64, b: f64 },
    Parabola { scale: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceShape {
    Plane,
    Sphere { radius: f64 },
    Cylinder { radius: f64 },
    Torus { big_r: f64, small_r: f64 },
}

impl SurfaceShape {
    pub fn describe(&self) -> String {
        match self {
            SurfaceShape::Plane => "plane".into(),
            SurfaceShape::Sphere { radius } => format!("sphere radius={radius}"),
            SurfaceShape::Cylinder { radius } => format!("cylinder radius={radius}"),
            SurfaceShape::Torus { big_r, small_r } => {
                format!("torus big_r={big_r} small_r={small_r}")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BracketSystem {
    Sphere,
    SphereAbelian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecipeGeometryArg {
    Sphere,
    Circle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConfinementArg {
    Dirichlet,
    Harmonic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayersimKnobs {
    pub eps: Vec<f64>,
    pub m_max: u32,
    pub n_transverse: usize,
    pub confinement: ConfinementArg,
    pub extrapolate: bool,
    pub hbar: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LayersimGeometry {
    Circle { radius: f64 },
    Strip,
    Latitude { radius: f64, theta0: f64 },
    Curve2d { shape: CurveShape, n_tangential: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandConfig {
    VqCurve { shape: CurveShape, t: f64, hbar: f64, method: VqMethod },
    VqSurface { shape: SurfaceShape, u: f64, v: f64, hbar: f64, method: VqMethod },
    VqLatitude { radius: f64, theta: f64, hbar: f64, method: VqMethod },
    Brackets { system: BracketSystem, dim: usize, radius: f64, samples: usize },
    SpectrumCircle { radius: f64, n_grid: usize, modes: usize, with_vq: bool, hbar: f64 },
    RecipesCompare { geometry: RecipeGeometryArg, radius: f64, lmax: u32, ambient_dim: u32, hbar: f64 },
    Layersim { geometry: LayersimGeometry, knobs: LayersimKnobs },
}

/// A fully resolved, validated run: what to compute and how to emit it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandConfig,
    pub format: OutputFormat,
    pub output: Option<String>,
}

// ---------------------------------------------------------------------
// Config file handling
// ---------------------------------------------------------------------

/// `key = value` lines, `#` comments; tracks which keys were consumed so
/// typos surface as errors.
struct ConfigMap {
    values: BTreeMap<String, String>,
    consumed: std::cell::RefCell<Vec<String>>,
}

impl ConfigMap {
    fn empty() -> Self {
        Self { values: BTreeMap::new(), consumed: Default::default() }
    }

    fn load(path: &str) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read --config file {path}: {e}")))?;
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Usage(format!(
                    "--config {path}:{}: expected `key = value`, got `{raw}`",
                    lineno + 1
                )));
            };
            values.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Self { values, consumed: Default::default() })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        let hit = self.values.get(key).map(|s| s.as_str());
        if hit.is_some() {
            self.consumed.borrow_mut().push(key.to_string());
        }
        hit
    }

    fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.raw(key) {
            None => Ok(None),
            Some(text) => text.parse::<T>().map(Some).map_err(|_| {
                CliError::Usage(format!("config key `{key}`: cannot parse `{text}`"))
            }),
        }
    }

    fn finish(&self) -> Result<(), CliError> {
        let consumed = self.consumed.borrow();
        for key in self.values.keys() {
            if !consumed.iter().any(|c| c == key) {
                return Err(CliError::Usage(format!(
                    "config key `{key}` is not recognized by this subcommand"
                )));
            }
        }
        Ok(())
    }
}

fn require<T>(cli: Option<T>, cfg: Result<Option<T>, CliError>, flag: &str) -> Result<T, CliError> {
    cli.map(Ok)
        .or_else(|| cfg.transpose())
        .transpose()?
        .ok_or_else(|| CliError::Usage(format!("missing required option --{flag}")))
}

fn resolve<T>(cli: Option<T>, cfg: Result<Option<T>, CliError>, default: T) -> Result<T, CliError> {
    Ok(cli.map(Ok).or_else(|| cfg.transpose()).transpose()?.unwrap_or(default))
}

fn positive(value: f64, flag: &str) -> Result<f64, CliError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(CliError::Usage(format!("--{flag} must be positive, got {value}")))
    }
}

fn parse_eps_list(text: &str) -> Result<Vec<f64>, CliError> {
    let mut out = Vec::new();
    for piece in text.split(',') {
        let v: f64 = piece
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("--eps: cannot parse `{piece}`")))?;
        if !v.is_finite() || v <= 0.0 {
            return Err(CliError::Usage(format!("--eps entries must be positive, got {v}")));
        }
        out.push(v);
    }
    if out.is_empty() {
        return Err(CliError::Usage("--eps needs at least one thickness".into()));
    }
    Ok(out)
}

fn resolve_hbar(cli: Option<f64>, cfg: &ConfigMap) -> Result<f64, CliError> {
    let hbar = resolve(cli, cfg.parsed("hbar"), 1.0)?;
    positive(hbar, "hbar")
}

fn resolve_method(cli: Option<String>, cfg: &ConfigMap) -> Result<VqMethod, CliError> {
    let name = resolve(cli, cfg.parsed::<String>("method"), "closed".into())?;
    match name.as_str() {
        "closed" => Ok(VqMethod::Closed),
        "profile" => Ok(VqMethod::Profile),
        "both" => Ok(VqMethod::Both),
        other => Err(CliError::Usage(format!(
            "--method must be closed, profile or both, got `{other}`"
        ))),
    }
}

fn resolve_curve_shape(
    shape: Option<String>,
    radius: Option<f64>,
    a: Option<f64>,
    b: Option<f64>,
    scale: Option<f64>,
    cfg: &ConfigMap,
    closed_only: bool,
) -> Result<CurveShape, CliError> {
    let name = require(shape, cfg.parsed::<String>("shape"), "shape")?;
    match name.as_str() {
        "line" if !closed_only => Ok(CurveShape::Line),
        "circle" => {
            let r = require(radius, cfg.parsed("radius"), "radius")?;
            Ok(CurveShape::Circle { radius: positive(r, "radius")? })
        }
        "ellipse" => {
            let a = positive(require(a, cfg.parsed("a"), "a")?, "a")?;
            let b = positive(require(b, cfg.parsed("b"), "b")?, "b")?;
            Ok(CurveShape::Ellipse { a, b })
        }
        "parabola" if !closed_only => {
            let s = positive(require(scale, cfg.parsed("scale"), "scale")?, "scale")?;
            Ok(CurveShape::Parabola { scale: s })
        }
        other => {
            let allowed = if closed_only { "circle, ellipse" } else { "line, circle, ellipse, parabola" };
            Err(CliError::Usage(format!("--shape must be one of {allowed}, got `{other}`")))
        }
    }
}

fn resolve_layersim_common(
    args: LayersimCommonArgs,
    cfg: &ConfigMap,
) -> Result<LayersimKnobs, CliError> {
    let eps_text = resolve(args.eps, cfg.parsed::<String>("eps"), "0.1,0.05,0.025".into())?;
    let eps = parse_eps_list(&eps_text)?;
    let m_max = resolve(args.mmax, cfg.parsed("mmax"), 3)?;
    let n_transverse = resolve(args.ntrans, cfg.parsed("ntrans"), 128)?;
    let confinement_name =
        resolve(args.confinement, cfg.parsed::<String>("confinement"), "dirichlet".into())?;
    let confinement = match confinement_name.as_str() {
        "dirichlet" => ConfinementArg::Dirichlet,
        "harmonic" => ConfinementArg::Harmonic,
        other => {
            return Err(CliError::Usage(format!(
                "--confinement must be dirichlet or harmonic, got `{other}`"
            )))
        }
    };
    let extrapolate = resolve(args.extrapolate.filter(|&x| x), cfg.parsed("extrapolate"), false)?;
    if extrapolate && eps.len() < 3 {
        return Err(CliError::Usage(format!(
            "--extrapolate needs at least 3 thicknesses in --eps, got {}",
            eps.len()
        )));
    }
    let hbar = resolve_hbar(args.hbar, cfg)?;
    Ok(LayersimKnobs { eps, m_max, n_transverse, confinement, extrapolate, hbar })
}

/// Parse a raw token list (without the program name) into a `RunConfig`.
pub fn parse_args<I, S>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut tokens: Vec<String> = vec!["qreduce".into()];
    tokens.extend(argv.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(&tokens).map_err(|e| {
        use clap::error::ErrorKind;
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliError::Help(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    })?;
    resolve_cli(cli)
}

pub(crate) fn resolve_cli(cli: Cli) -> Result<RunConfig, CliError> {
    let cfg = match &cli.config {
        Some(path) => ConfigMap::load(path)?,
        None => ConfigMap::empty(),
    };
    let format_name = resolve(cli.format, cfg.parsed::<String>("format"), "text".into())?;
    let format = match format_name.as_str() {
        "text" => OutputFormat::Text,
        "csv" => OutputFormat::Csv,
        "json" => OutputFormat::Json,
        other => {
            return Err(CliError::Usage(format!(
                "--format must be text, csv or json, got `{other}`"
            )))
        }
    };
    let output = cli.output.map(Ok).or_else(|| cfg.parsed::<String>("output").transpose()).transpose()?;

    let command = match cli.command {
        TopCommand::Vq { target } => match target {
            VqTarget::Curve(a) => {
                let shape =
                    resolve_curve_shape(a.shape, a.radius, a.a, a.b, a.scale, &cfg, false)?;
                CommandConfig::VqCurve {
                    shape,
                    t: resolve(a.t, cfg.parsed("t"), 0.0)?,
                    hbar: resolve_hbar(a.hbar, &cfg)?,
                    method: resolve_method(a.method, &cfg)?,
                }
            }
            VqTarget::Surface(a) => {
                let name = require(a.shape, cfg.parsed::<String>("shape"), "shape")?;
                let shape = match name.as_str() {
                    "plane" => SurfaceShape::Plane,
                    "sphere" => SurfaceShape::Sphere {
                        radius: positive(require(a.radius, cfg.parsed("radius"), "radius")?, "radius")?,
                    },
                    "cylinder" => SurfaceShape::Cylinder {
                        radius: positive(require(a.radius, cfg.parsed("radius"), "radius")?, "radius")?,
                    },
                    "torus" => {
                        let big = positive(require(a.big_r, cfg.parsed("big-r"), "big-r")?, "big-r")?;
                        let small =
                            positive(require(a.small_r, cfg.parsed("small-r"), "small-r")?, "small-r")?;
                        if big <= small {
                            return Err(CliError::Usage(format!(
                                "--big-r must exceed --small-r, got {big} <= {small}"
                            )));
                        }
                        SurfaceShape::Torus { big_r: big, small_r: small }
                    }
                    other => {
                        return Err(CliError::Usage(format!(
                            "--shape must be plane, sphere, cylinder or torus, got `{other}`"
                        )))
                    }
                };
                let (default_u, default_v) = match shape {
                    SurfaceShape::Sphere { .. } => (std::f64::consts::FRAC_PI_2, 0.0),
                    _ => (0.0, 0.0),
                };
                CommandConfig::VqSurface {
                    shape,
                    u: resolve(a.u, cfg.parsed("u"), default_u)?,
                    v: resolve(a.v, cfg.parsed("v"), default_v)?,
                    hbar: resolve_hbar(a.hbar, &cfg)?,
                    method: resolve_method(a.method, &cfg)?,
                }
            }
            VqTarget::Latitude(a) => {
                let radius = positive(require(a.radius, cfg.parsed("radius"), "radius")?, "radius")?;
                let theta = require(a.theta, cfg.parsed("theta"), "theta")?;
                if !(theta > 0.0 && theta < std::f64::consts::PI) {
                    return Err(CliError::Usage(format!(
                        "--theta must lie strictly between 0 and pi, got {theta}"
                    )));
                }
                CommandConfig::VqLatitude {
                    radius,
                    theta,
                    hbar: resolve_hbar(a.hbar, &cfg)?,
                    method: resolve_method(a.method, &cfg)?,
                }
            }
        },
        TopCommand::Brackets(a) => {
            let system_name =
                resolve(a.system, cfg.parsed::<String>("system"), "sphere".into())?;
            let system = match system_name.as_str() {
                "sphere" => BracketSystem::Sphere,
                "sphere-abelian" => BracketSystem::SphereAbelian,
                other => {
                    return Err(CliError::Usage(format!(
                        "--system must be sphere or sphere-abelian, got `{other}`"
                    )))
                }
            };
            let dim = resolve(a.dim, cfg.parsed("n"), 3)?;
            if dim < 2 {
                return Err(CliError::Usage(format!("--n must be at least 2, got {dim}")));
            }
            let radius = positive(resolve(a.radius, cfg.parsed("radius"), 1.0)?, "radius")?;
            let samples = resolve(a.samples, cfg.parsed("samples"), 20)?;
            if samples == 0 {
                return Err(CliError::Usage("--samples must be at least 1".into()));
            }
            CommandConfig::Brackets { system, dim, radius, samples }
        }
        TopCommand::Spectrum { target } => match target {
            SpectrumTarget::Circle(a) => {
                let radius = positive(resolve(a.radius, cfg.parsed("radius"), 1.0)?, "radius")?;
                let n_grid = resolve(a.n_grid, cfg.parsed("n-grid"), 256)?;
                if n_grid < 8 {
                    return Err(CliError::Usage(format!("--n-grid must be at least 8, got {n_grid}")));
                }
                let modes = resolve(a.modes, cfg.parsed("modes"), 8)?;
                if modes == 0 || modes > n_grid {
                    return Err(CliError::Usage(format!(
                        "--modes must lie in 1..={n_grid}, got {modes}"
                    )));
                }
                CommandConfig::SpectrumCircle {
                    radius,
                    n_grid,
                    modes,
                    with_vq: resolve(a.with_vq.filter(|&x| x), cfg.parsed("with-vq"), false)?,
                    hbar: resolve_hbar(a.hbar, &cfg)?,
                }
            }
        },
        TopCommand::Recipes { target } => match target {
            RecipesTarget::Compare(a) => {
                let geometry_name =
                    resolve(a.geometry, cfg.parsed::<String>("geometry"), "sphere".into())?;
                let geometry = match geometry_name.as_str() {
                    "sphere" => RecipeGeometryArg::Sphere,
                    "circle" => RecipeGeometryArg::Circle,
                    other => {
                        return Err(CliError::Usage(format!(
                            "--geometry must be sphere or circle, got `{other}`"
                        )))
                    }
                };
                let ambient_dim = resolve(a.ambient_dim, cfg.parsed("n"), 3)?;
                if ambient_dim < 2 {
                    return Err(CliError::Usage(format!("--n must be at least 2, got {ambient_dim}")));
                }
                CommandConfig::RecipesCompare {
                    geometry,
                    radius: positive(resolve(a.radius, cfg.parsed("radius"), 1.0)?, "radius")?,
                    lmax: resolve(a.lmax, cfg.parsed("lmax"), 4)?,
                    ambient_dim,
                    hbar: resolve_hbar(a.hbar, &cfg)?,
                }
            }
        },
        TopCommand::Layersim { target } => {
            let (geometry, common) = match target {
                LayersimTarget::Circle(a) => {
                    let radius =
                        positive(require(a.radius, cfg.parsed("radius"), "radius")?, "radius")?;
                    (LayersimGeometry::Circle { radius }, a.common)
                }
                LayersimTarget::Strip(common) => (LayersimGeometry::Strip, common),
                LayersimTarget::Latitude(a) => {
                    let radius =
                        positive(require(a.radius, cfg.parsed("radius"), "radius")?, "radius")?;
                    let theta0 = require(a.theta0, cfg.parsed("theta0"), "theta0")?;
                    if !(theta0 > 0.0 && theta0 < std::f64::consts::PI) {
                        return Err(CliError::Usage(format!(
                            "--theta0 must lie strictly between 0 and pi, got {theta0}"
                        )));
                    }
                    (LayersimGeometry::Latitude { radius, theta0 }, a.common)
                }
                LayersimTarget::Curve2d(a) => {
                    let shape =
                        resolve_curve_shape(a.shape, a.radius, a.a, a.b, None, &cfg, true)?;
                    let n_tangential = resolve(a.ntang, cfg.parsed("ntang"), 21)?;
                    (LayersimGeometry::Curve2d { shape, n_tangential }, a.common)
                }
            };
            let knobs = resolve_layersim_common(common, &cfg)?;
            CommandConfig::Layersim { geometry, knobs }
        }
    };
    cfg.finish()?;
    Ok(RunConfig { command, format, output })
}

/// The full clap command tree, exposed so tests can enumerate flags.
pub fn command_tree() -> clap::Command {
    Cli::command()
}
