//! The figure suite: the exp-image of the `{X, T}` plane, exp-spheres of
//! radii 1 and 3, the half ball of radius 5, and the singular points of the
//! spheres of radii 5 and 20 with close-ups.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::mesh::{
    ball_cutaway_mesh, detect_self_proximity, plane_exp_surface, singular_point_closeup, sphere_exp_mesh,
    SphereGrid, TriMesh,
};

use super::{render_mesh, CliError, Format};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureSettings {
    /// `(n_theta, n_s)` of the plane surface.
    pub surface_resolution: (usize, usize),
    pub surface_s_max: f64,
    /// `(n_phi, n_gamma)` of every sphere mesh.
    pub sphere_resolution: (usize, usize),
    /// `(n_phi, n_gamma)` of the close-up bands.
    pub closeup_resolution: (usize, usize),
    /// Half-width in `γ` of the close-up bands.
    pub closeup_window: f64,
}

impl Default for FigureSettings {
    fn default() -> Self {
        Self {
            surface_resolution: (128, 64),
            surface_s_max: std::f64::consts::TAU,
            sphere_resolution: (128, 129),
            closeup_resolution: (128, 65),
            closeup_window: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureEntry {
    pub figure: u8,
    pub file: String,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    pub vertices: usize,
    pub faces: usize,
    /// Non-adjacent vertex pairs of a sphere mesh closer than the proximity
    /// threshold.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub self_proximity_events: Option<usize>,
    /// `γ` of the row of geodesics meeting at a singular point.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular_gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular_point: Option<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub format: &'static str,
    pub settings: FigureSettings,
    pub figures: Vec<FigureEntry>,
}

fn entry(figure: u8, file: String, kind: &'static str, radius: Option<f64>, mesh: &TriMesh) -> FigureEntry {
    FigureEntry {
        figure,
        file,
        kind,
        radius,
        vertices: mesh.vertices.len(),
        faces: mesh.faces.len(),
        self_proximity_events: None,
        singular_gamma: None,
        singular_point: None,
    }
}

/// Writes every figure mesh and `manifest.json` into `out_dir`, creating it if
/// needed. Output depends only on `settings` and `format`.
pub fn run_figures(out_dir: &Path, settings: &FigureSettings, format: Format) -> Result<Manifest, CliError> {
    let ext = match format {
        Format::Obj => "obj",
        Format::Ply => "ply",
        other => return Err(CliError::Usage(format!("{other:?} cannot hold a mesh; use obj or ply"))),
    };
    fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let write = |name: &str, mesh: &TriMesh| -> Result<String, CliError> {
        let file = format!("{name}.{ext}");
        let path = out_dir.join(&file);
        fs::write(&path, render_mesh(mesh, format)?).map_err(|e| CliError::io(&path, e))?;
        Ok(file)
    };
    let (n_phi, n_gamma) = settings.sphere_resolution;
    let mut figures = Vec::new();

    let plane = plane_exp_surface(
        (0.0, std::f64::consts::TAU),
        (0.0, settings.surface_s_max),
        settings.surface_resolution,
    )?;
    figures.push(entry(1, write("fig1_plane_surface", &plane)?, "plane_exp_surface", None, &plane));

    let sphere = |figure: u8, radius: f64| -> Result<FigureEntry, CliError> {
        let grid = SphereGrid::new(n_phi, n_gamma, radius)?;
        let mesh = sphere_exp_mesh(&grid)?;
        let report = detect_self_proximity(&grid, &mesh);
        let name = format!("fig{figure}_sphere_r{radius}");
        let mut e = entry(figure, write(&name, &mesh)?, "sphere_exp_mesh", Some(radius), &mesh);
        e.self_proximity_events = Some(report.events.len());
        Ok(e)
    };
    figures.push(sphere(2, 1.0)?);
    figures.push(sphere(2, 3.0)?);

    let half = ball_cutaway_mesh(&SphereGrid::new(n_phi, n_gamma, 5.0)?, [0.0, 1.0, 0.0])?;
    figures.push(entry(3, write("fig3_half_ball_r5", &half)?, "ball_cutaway_mesh", Some(5.0), &half));

    for (figure, radius) in [(4u8, 5.0), (5, 20.0)] {
        figures.push(sphere(figure, radius)?);
        let patch = singular_point_closeup(radius, settings.closeup_window, settings.closeup_resolution)?;
        let name = format!("fig{figure}_closeup_r{radius}");
        let mut e = entry(figure, write(&name, &patch.mesh)?, "singular_point_closeup", Some(radius), &patch.mesh);
        e.singular_gamma = Some(patch.gamma);
        e.singular_point = Some(patch.apex.to_array());
        figures.push(e);
    }

    let manifest = Manifest {
        format: ext,
        settings: settings.clone(),
        figures,
    };
    let path = out_dir.join("manifest.json");
    let mut json = serde_json::to_string_pretty(&manifest).expect("manifest is plain data");
    json.push('\n');
    fs::write(&path, json).map_err(|e| CliError::io(&path, e))?;
    Ok(manifest)
}
