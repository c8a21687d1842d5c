//! The `heis` command line tool.
//!
//! Exit codes: `0` success, `2` bad arguments, `3` I/O failure, `4` solver
//! failure. Every subcommand accepts `--config FILE`, a JSON object keyed by
//! long flag names (`{"radius": 5, "half": true}`); flags given on the
//! command line take precedence over the file.

mod config;
mod figures;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::connection::{nabla, sectional_curvature, FrameIndex};
use crate::distance::{cygan_distance, shoot_candidates};
use crate::error::HeisError;
use crate::geodesic::{sample, GeodesicSpec};
use crate::group::HeisPoint;
use crate::io;
use crate::mesh::{ball_cutaway_mesh, clip_to_metric, plane_exp_surface, sphere_exp_mesh, SphereGrid, TriMesh};

pub use figures::{run_figures, FigureSettings};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_SOLVER: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Heis(#[from] HeisError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
            CliError::Heis(e) => match e {
                HeisError::FrameIndexOutOfRange(_) | HeisError::DegeneratePlane | HeisError::InvalidParameter(_) => {
                    EXIT_USAGE
                }
                HeisError::NonFiniteState { .. }
                | HeisError::NoConvergence { .. }
                | HeisError::Unreachable { .. }
                | HeisError::NoSingularity { .. } => EXIT_SOLVER,
            },
        }
    }

    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "heis", version, about = "Geodesics, distances and exp-sphere meshes in the Heisenberg group")]
#[command(args_override_self = true)]
pub struct Cli {
    /// JSON file of default flag values, keyed by long flag name.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a unit-speed geodesic.
    Geodesic(GeodesicArgs),
    /// Mesh the exp-sphere of a given radius.
    Sphere(SphereArgs),
    /// Mesh the exp-image of the {X, T} tangent plane at the identity.
    Surface(SurfaceArgs),
    /// Write the full figure suite and a manifest.
    Figures(FiguresArgs),
    /// Distance between two points.
    Distance(DistanceArgs),
    /// Print sectional curvatures and the connection table.
    Curvature(CurvatureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Obj,
    Ply,
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    Riemannian,
    Cygan,
}

#[derive(Debug, Args)]
pub struct GeodesicArgs {
    /// Vertical component of the unit initial velocity, in [-1, 1].
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: f64,
    /// Azimuth of the horizontal part of the initial velocity.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
    /// Final arc length.
    #[arg(long)]
    pub smax: f64,
    /// Number of segments.
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// Starting point `x,y,z`.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true, default_value = "0,0,0")]
    pub base: HeisPoint,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SphereArgs {
    #[arg(long)]
    pub radius: f64,
    #[arg(long, default_value_t = 128)]
    pub nphi: usize,
    #[arg(long, default_value_t = 129)]
    pub ngamma: usize,
    /// Drop vertices that are strictly closer than `radius - tol` to the identity.
    #[arg(long)]
    pub clip_to_metric: bool,
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
    /// Keep the half with y <= 0.
    #[arg(long)]
    pub half: bool,
    /// Keep the side of the plane through the origin opposite to this normal.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub cut_normal: Option<HeisPoint>,
    #[arg(long, value_enum, default_value = "obj")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta_min: f64,
    #[arg(long, default_value_t = std::f64::consts::TAU, allow_negative_numbers = true)]
    pub theta_max: f64,
    #[arg(long, default_value_t = 0.0)]
    pub smin: f64,
    #[arg(long, default_value_t = std::f64::consts::TAU)]
    pub smax: f64,
    #[arg(long, default_value_t = 128)]
    pub ntheta: usize,
    #[arg(long, default_value_t = 64)]
    pub ns: usize,
    #[arg(long, value_enum, default_value = "obj")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Mesh format, obj or ply.
    #[arg(long, value_enum, default_value = "obj")]
    pub format: Format,
    /// Longitude resolution of the sphere meshes.
    #[arg(long, default_value_t = 128)]
    pub nphi: usize,
    /// Latitude resolution of the sphere meshes.
    #[arg(long, default_value_t = 129)]
    pub ngamma: usize,
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    /// First point `x,y,z`.
    #[arg(value_parser = parse_point, allow_hyphen_values = true)]
    pub p: HeisPoint,
    /// Second point `x,y,z`.
    #[arg(value_parser = parse_point, allow_hyphen_values = true)]
    pub q: HeisPoint,
    #[arg(long, value_enum, default_value = "riemannian")]
    pub metric: Metric,
    /// Print every geodesic found from p to q instead of the distance.
    #[arg(long)]
    pub all_candidates: bool,
    /// Residual tolerance of the shooting solver.
    #[arg(long, default_value_t = crate::distance::DISTANCE_TOL)]
    pub tol: f64,
    /// Candidate list format, jsonl or csv.
    #[arg(long, value_enum, default_value = "jsonl")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CurvatureArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn parse_point(s: &str) -> std::result::Result<HeisPoint, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected x,y,z, got `{s}`"));
    }
    let mut c = [0.0; 3];
    for (slot, part) in c.iter_mut().zip(&parts) {
        *slot = part.parse::<f64>().map_err(|e| format!("`{part}`: {e}"))?;
        if !slot.is_finite() {
            return Err(format!("`{part}` is not finite"));
        }
    }
    Ok(HeisPoint::from(c))
}

fn usage(cond: bool, msg: impl FnOnce() -> String) -> CliResult<()> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Usage(msg()))
    }
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(|e| CliError::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))
        }
    }
}

fn render(f: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>) -> Vec<u8> {
    let mut buf = Vec::new();
    f(&mut buf).expect("writing to memory cannot fail");
    buf
}

pub(crate) fn render_mesh(mesh: &TriMesh, format: Format) -> CliResult<Vec<u8>> {
    match format {
        Format::Obj => Ok(render(|w| io::write_obj(w, mesh))),
        Format::Ply => Ok(render(|w| io::write_ply(w, mesh))),
        other => Err(CliError::Usage(format!("{other:?} cannot hold a mesh; use obj or ply"))),
    }
}

fn cmd_geodesic(a: &GeodesicArgs) -> CliResult<()> {
    usage(a.n >= 1, || "--n must be at least 1".into())?;
    usage(a.smax.is_finite() && a.smax >= 0.0, || format!("--smax must be non-negative, got {}", a.smax))?;
    usage(a.phi.is_finite(), || "--phi must be finite".into())?;
    let spec = GeodesicSpec::from_base(a.base, a.gamma, a.phi)?;
    let samples: Vec<_> = (0..=a.n)
        .map(|k| {
            let s = if k == a.n { a.smax } else { a.smax * k as f64 / a.n as f64 };
            sample(&spec, s)
        })
        .collect();
    let bytes = match a.format {
        Format::Csv => render(|w| io::write_polyline_csv(w, &samples)),
        Format::Obj => render(|w| io::write_polyline_obj(w, &samples)),
        Format::Ply => render(|w| io::write_polyline_ply(w, &samples)),
        Format::Jsonl => render(|w| io::write_polyline_jsonl(w, &samples)),
    };
    emit(a.out.as_deref(), &bytes)
}

fn cmd_sphere(a: &SphereArgs) -> CliResult<()> {
    usage(a.radius.is_finite() && a.radius > 0.0, || format!("--radius must be positive, got {}", a.radius))?;
    usage(a.nphi >= 3 && a.ngamma >= 3, || "resolutions must be at least 3".into())?;
    usage(a.tol.is_finite() && a.tol > 0.0, || format!("--tol must be positive, got {}", a.tol))?;
    let grid = SphereGrid::new(a.nphi, a.ngamma, a.radius)?;
    let normal = match (a.cut_normal, a.half) {
        (Some(n), _) => Some(n.to_array()),
        (None, true) => Some([0.0, 1.0, 0.0]),
        (None, false) => None,
    };
    let mut mesh = match normal {
        Some(n) => ball_cutaway_mesh(&grid, n)?,
        None => sphere_exp_mesh(&grid)?,
    };
    if a.clip_to_metric {
        mesh = clip_to_metric(&mesh, a.radius, a.tol)?;
    }
    emit(a.out.as_deref(), &render_mesh(&mesh, a.format)?)
}

fn cmd_surface(a: &SurfaceArgs) -> CliResult<()> {
    usage(a.ntheta >= 3 && a.ns >= 3, || "resolutions must be at least 3".into())?;
    let mesh = plane_exp_surface((a.theta_min, a.theta_max), (a.smin, a.smax), (a.ntheta, a.ns))?;
    emit(a.out.as_deref(), &render_mesh(&mesh, a.format)?)
}

fn cmd_distance(a: &DistanceArgs) -> CliResult<()> {
    usage(a.tol.is_finite() && a.tol > 0.0, || format!("--tol must be positive, got {}", a.tol))?;
    let target = a.p.inverse() * a.q;
    let candidates = || -> CliResult<Vec<_>> {
        if a.p == a.q || target == HeisPoint::IDENTITY {
            Ok(Vec::new())
        } else {
            Ok(shoot_candidates(&target, a.tol)?)
        }
    };
    if a.all_candidates {
        usage(a.metric == Metric::Riemannian, || "--all-candidates needs --metric riemannian".into())?;
        let candidates = candidates()?;
        let bytes = match a.format {
            Format::Jsonl => render(|w| io::write_candidates_jsonl(w, &candidates)),
            Format::Csv => render(|w| io::write_candidates_csv(w, &candidates)),
            other => return Err(CliError::Usage(format!("{other:?} cannot hold candidates; use jsonl or csv"))),
        };
        return emit(a.out.as_deref(), &bytes);
    }
    let d = match a.metric {
        Metric::Cygan => cygan_distance(&a.p, &a.q),
        // sorted by arc length
        Metric::Riemannian => candidates()?.first().map_or(0.0, |c| c.s),
    };
    emit(a.out.as_deref(), format!("{d}\n").as_bytes())
}

fn cmd_curvature(a: &CurvatureArgs) -> CliResult<()> {
    let mut text = String::from("sectional curvature\n");
    for (i, j) in [(FrameIndex::X, FrameIndex::Y), (FrameIndex::X, FrameIndex::T), (FrameIndex::Y, FrameIndex::T)] {
        text.push_str(&format!("K({i},{j}) = {}\n", sectional_curvature(i, j)?));
    }
    text.push_str("connection, nabla_I J in the frame (X, Y, T)\n");
    for i in FrameIndex::ALL {
        for j in FrameIndex::ALL {
            let v = nabla(i, j);
            // print -0 as 0
            let [a, b, c] = v.to_array().map(|x| x + 0.0);
            text.push_str(&format!("nabla_{i} {j} = ({a}, {b}, {c})\n"));
        }
    }
    emit(a.out.as_deref(), text.as_bytes())
}

pub fn execute(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Geodesic(a) => cmd_geodesic(a),
        Command::Sphere(a) => cmd_sphere(a),
        Command::Surface(a) => cmd_surface(a),
        Command::Figures(a) => {
            let settings = FigureSettings {
                sphere_resolution: (a.nphi, a.ngamma),
                ..FigureSettings::default()
            };
            run_figures(&a.out_dir, &settings, a.format).map(|_| ())
        }
        Command::Distance(a) => cmd_distance(a),
        Command::Curvature(a) => cmd_curvature(a),
    }
}

/// Parses `args` (including the program name), merges the config file if
/// one is given, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match config::merge_config(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
