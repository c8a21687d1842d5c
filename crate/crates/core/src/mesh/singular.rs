//! Singular points of exp-spheres.
//!
//! Past the first conjugate radius a whole row of the parameter sphere is
//! sent to a single point on the z-axis: geodesics with `|γ| s = kπ` return
//! to the axis. On a mesh this shows up as vertices whose initial directions
//! are far apart on the unit tangent sphere but whose images nearly coincide.
//! The detector hashes the non-polar vertices into cells of one mean edge
//! length and reports pairs whose directions are at least
//! [`MIN_PARAMETER_SEPARATION`] mean parameter edges apart and whose images
//! lie closer than [`PROXIMITY_THRESHOLD`] mean edge lengths.
//!
//! Separation is measured on the tangent sphere rather than in grid steps:
//! near the poles a row is a tiny circle, and vertices a few columns apart
//! are close in space only because their directions are.

use std::collections::HashMap;

use crate::error::{ensure, Result};
use crate::geodesic::{geodesic_from_origin, GeodesicSpec};
use crate::group::HeisPoint;

use super::{dist, grid_faces, no_singularity, sphere_exp_mesh, SphereGrid, TriMesh};

/// Separation, in mean edge lengths, below which two vertices touch.
pub const PROXIMITY_THRESHOLD: f64 = 0.1;

/// Grid used to look for singular points before re-meshing them.
pub const DETECTION_GRID: (usize, usize) = (128, 129);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProximityEvent {
    pub a: usize,
    pub b: usize,
    /// Euclidean separation over the mean edge length.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProximityReport {
    pub mean_edge: f64,
    /// Smallest normalised separation among well-separated pairs closer than
    /// one mean edge, if any.
    pub min_ratio: Option<f64>,
    pub events: Vec<ProximityEvent>,
}

impl ProximityReport {
    pub fn is_singular(&self) -> bool {
        !self.events.is_empty()
    }
}

/// Pairs closer than this many mean parameter edges on the unit tangent
/// sphere count as neighbours.
pub const MIN_PARAMETER_SEPARATION: f64 = 2.0;

/// Unit initial direction of every vertex, as a point of the unit sphere.
fn directions(grid: &SphereGrid, n: usize) -> Vec<[f64; 3]> {
    (0..n)
        .map(|i| {
            let (col, row) = grid.coords(i);
            let (g, phi) = (grid.gamma(row), grid.phi(col));
            let r = (1.0 - g * g).max(0.0).sqrt();
            [r * phi.cos(), r * phi.sin(), g]
        })
        .collect()
}

/// Finds pairs of non-polar vertices of a sphere mesh built on `grid` whose
/// initial directions are well separated but whose images nearly coincide.
pub fn detect_self_proximity(grid: &SphereGrid, mesh: &TriMesh) -> ProximityReport {
    let mean_edge = mesh.mean_edge_length();
    let dirs = directions(grid, mesh.vertices.len());
    let edges = mesh.edges();
    let mean_dir_edge =
        edges.iter().map(|&(a, b)| dist(&dirs[a as usize], &dirs[b as usize])).sum::<f64>() / edges.len() as f64;
    let min_dir_sep = MIN_PARAMETER_SEPARATION * mean_dir_edge;
    let cell = mean_edge;
    let key = |v: &[f64; 3]| {
        (
            (v[0] / cell).floor() as i64,
            (v[1] / cell).floor() as i64,
            (v[2] / cell).floor() as i64,
        )
    };
    let mut buckets: HashMap<(i64, i64, i64), Vec<usize>> = HashMap::new();
    for (i, v) in mesh.vertices.iter().enumerate() {
        if !grid.is_pole(i) {
            buckets.entry(key(v)).or_default().push(i);
        }
    }
    let mut min_ratio: Option<f64> = None;
    let mut events = Vec::new();
    for (i, v) in mesh.vertices.iter().enumerate() {
        if grid.is_pole(i) {
            continue;
        }
        let (kx, ky, kz) = key(v);
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    let Some(bucket) = buckets.get(&(kx + dx, ky + dy, kz + dz)) else {
                        continue;
                    };
                    for &j in bucket {
                        if j <= i || dist(&dirs[i], &dirs[j]) < min_dir_sep {
                            continue;
                        }
                        let d = dist(v, &mesh.vertices[j]);
                        if d >= cell {
                            continue;
                        }
                        let ratio = d / mean_edge;
                        min_ratio = Some(min_ratio.map_or(ratio, |m: f64| m.min(ratio)));
                        if ratio < PROXIMITY_THRESHOLD {
                            events.push(ProximityEvent { a: i, b: j, ratio });
                        }
                    }
                }
            }
        }
    }
    events.sort_by(|x, y| (x.a, x.b).cmp(&(y.a, y.b)));
    ProximityReport {
        mean_edge,
        min_ratio,
        events,
    }
}

/// Re-meshed neighbourhood of a singular point.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularPatch {
    pub mesh: TriMesh,
    /// Vertical component of the row of geodesics that meets at the point.
    pub gamma: f64,
    /// The singular point itself.
    pub apex: HeisPoint,
}

fn planar_radius(gamma: f64, radius: f64) -> f64 {
    let p = geodesic_from_origin(&GeodesicSpec::new(gamma, 0.0).expect("|gamma| <= 1"), radius);
    p.x.hypot(p.y)
}

/// Golden-section minimisation of the row radius on `[lo, hi]`.
fn pinch_gamma(radius: f64, mut lo: f64, mut hi: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - ratio * (hi - lo);
    let mut b = lo + ratio * (hi - lo);
    let (mut fa, mut fb) = (planar_radius(a, radius), planar_radius(b, radius));
    for _ in 0..200 {
        if hi - lo < 1e-15 {
            break;
        }
        if fa < fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - ratio * (hi - lo);
            fa = planar_radius(a, radius);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + ratio * (hi - lo);
            fb = planar_radius(b, radius);
        }
    }
    0.5 * (lo + hi)
}

/// Locates the singular point of the exp-sphere of `radius` and re-meshes
/// the band `|γ − γ*| ≤ window` around the row of geodesics meeting there at
/// the requested `(n_phi, n_gamma)` resolution.
///
/// Several rows can collapse on large spheres. The one chosen is the highest
/// point on the upper half of the z-axis: the first return of geodesics to
/// the axis, which is the singular point of the metric sphere itself.
pub fn singular_point_closeup(radius: f64, window: f64, resolution: (usize, usize)) -> Result<SingularPatch> {
    ensure(window > 0.0 && window.is_finite(), || format!("window must be positive, got {window}"))?;
    let (n_phi, n_gamma) = resolution;
    ensure(n_phi >= 3 && n_gamma >= 2, || "resolution must be at least 3 x 2".into())?;
    let grid = SphereGrid::new(DETECTION_GRID.0, DETECTION_GRID.1, radius)?;
    let mesh = sphere_exp_mesh(&grid)?;
    let report = detect_self_proximity(&grid, &mesh);

    let gamma_of = |v: usize| grid.gamma(grid.coords(v).1);
    let flagged = report
        .events
        .iter()
        .flat_map(|e| [e.a, e.b])
        .filter(|&v| gamma_of(v) > 0.0)
        .max_by(|&a, &b| mesh.vertices[a][2].total_cmp(&mesh.vertices[b][2]).then(a.cmp(&b)))
        .ok_or_else(|| no_singularity(radius))?;

    let step = 2.0 / (grid.n_gamma - 1) as f64;
    let g0 = gamma_of(flagged);
    let gamma = pinch_gamma(radius, (g0 - 3.0 * step).max(0.0), (g0 + 3.0 * step).min(1.0));
    let apex = geodesic_from_origin(&GeodesicSpec::new(gamma, 0.0)?, radius);

    let lo = (gamma - window).max(-1.0);
    let hi = (gamma + window).min(1.0);
    let row_gamma = |row: usize| {
        if row == n_gamma - 1 {
            hi
        } else {
            lo + (hi - lo) * row as f64 / (n_gamma - 1) as f64
        }
    };
    let (south, north) = (lo == -1.0, hi == 1.0);
    let mut layout: Vec<(usize, usize)> = Vec::new();
    let mut index_of = HashMap::new();
    for row in 0..n_gamma {
        let collapsed = (row == 0 && south) || (row == n_gamma - 1 && north);
        for col in 0..if collapsed { 1 } else { n_phi } {
            index_of.insert((col, row), layout.len());
            layout.push((col, row));
        }
    }
    let index = |col: usize, row: usize| {
        let collapsed = (row == 0 && south) || (row == n_gamma - 1 && north);
        index_of[&(if collapsed { 0 } else { col % n_phi }, row)]
    };
    let params: Vec<(f64, f64)> = layout
        .iter()
        .map(|&(col, row)| (row_gamma(row), std::f64::consts::TAU * col as f64 / n_phi as f64))
        .collect();
    let vertices = params
        .iter()
        .map(|&(g, phi)| geodesic_from_origin(&GeodesicSpec::new(g, phi).expect("band within [-1, 1]"), radius).to_array())
        .collect();
    let faces = grid_faces(n_phi, n_gamma, index, south, north);
    let mut patch = TriMesh {
        vertices,
        faces,
        scalars: Vec::new(),
    };
    patch.push_scalar("gamma", params.iter().map(|p| p.0).collect());
    patch.push_scalar("phi", params.iter().map(|p| p.1).collect());
    patch.push_scalar("s", vec![radius; params.len()]);
    Ok(SingularPatch { mesh: patch, gamma, apex })
}

/// Bisection on the radius for the onset of self-proximity, assuming the
/// sphere of radius `lo` is embedded and that of radius `hi` is not.
pub fn first_singular_radius(n_phi: usize, n_gamma: usize, mut lo: f64, mut hi: f64, iterations: usize) -> Result<f64> {
    let singular = |r: f64| -> Result<bool> {
        let grid = SphereGrid::new(n_phi, n_gamma, r)?;
        Ok(detect_self_proximity(&grid, &sphere_exp_mesh(&grid)?).is_singular())
    };
    ensure(!singular(lo)?, || format!("sphere of radius {lo} is already singular"))?;
    ensure(singular(hi)?, || format!("sphere of radius {hi} shows no singularity"))?;
    for _ in 0..iterations {
        let mid = 0.5 * (lo + hi);
        if singular(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
