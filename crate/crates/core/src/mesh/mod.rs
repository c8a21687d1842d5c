//! Triangle meshes of exp-spheres and exp-surfaces.
//!
//! The exp-sphere of radius `R` is the image of the unit tangent sphere at
//! the identity under `v ↦ exp(R v)`. It is parameterised by `(φ, γ)` with
//! `γ` sampled uniformly in `[−1, 1]`; the two poles `γ = ±1` are single
//! vertices joined to the adjacent rows by triangle fans.
//!
//! Vertex layout of [`sphere_exp_mesh`]: index `0` is the south pole, then
//! rows `1..n_gamma−1` of `n_phi` vertices each, then the north pole.

mod singular;

pub use singular::{
    detect_self_proximity, first_singular_radius, singular_point_closeup, ProximityEvent, ProximityReport,
    SingularPatch, DETECTION_GRID, MIN_PARAMETER_SEPARATION, PROXIMITY_THRESHOLD,
};

use std::collections::HashSet;
use std::f64::consts::TAU;

use rayon::prelude::*;

use crate::distance::riemannian_distance;
use crate::error::{ensure, HeisError, Result};
use crate::geodesic::{exp_map, geodesic_from_origin, geodesic_from_point, GeodesicSpec};
use crate::group::HeisPoint;
use crate::metric::FrameVector;

/// A named per-vertex attribute.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub name: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TriMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[u32; 3]>,
    pub scalars: Vec<ScalarField>,
}

impl TriMesh {
    /// Checks index bounds, non-degenerate faces, finite coordinates and
    /// scalar lengths.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        ensure(self.vertices.iter().flatten().all(|c| c.is_finite()), || {
            "mesh has non-finite vertex coordinates".into()
        })?;
        for (fi, f) in self.faces.iter().enumerate() {
            ensure(f.iter().all(|&i| (i as usize) < n), || format!("face {fi} indexes past the vertex list"))?;
            ensure(f[0] != f[1] && f[1] != f[2] && f[0] != f[2], || format!("face {fi} is degenerate"))?;
        }
        for s in &self.scalars {
            ensure(s.values.len() == n, || format!("scalar `{}` has the wrong length", s.name))?;
        }
        Ok(())
    }

    pub fn scalar(&self, name: &str) -> Option<&[f64]> {
        self.scalars.iter().find(|s| s.name == name).map(|s| s.values.as_slice())
    }

    pub fn push_scalar(&mut self, name: &str, values: Vec<f64>) {
        self.scalars.retain(|s| s.name != name);
        self.scalars.push(ScalarField {
            name: name.to_string(),
            values,
        });
    }

    /// Distinct undirected edges.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut set = HashSet::new();
        for f in &self.faces {
            for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                set.insert((a.min(b), a.max(b)));
            }
        }
        let mut out: Vec<_> = set.into_iter().collect();
        out.sort_unstable();
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges().len() as i64 + self.faces.len() as i64
    }

    pub fn mean_edge_length(&self) -> f64 {
        let edges = self.edges();
        if edges.is_empty() {
            return 0.0;
        }
        let total: f64 = edges
            .iter()
            .map(|&(a, b)| dist(&self.vertices[a as usize], &self.vertices[b as usize]))
            .sum();
        total / edges.len() as f64
    }

    /// Keeps the flagged vertices and every face whose corners are all kept.
    pub fn retain_vertices(&self, keep: &[bool]) -> TriMesh {
        let mut remap = vec![u32::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if keep[i] {
                remap[i] = vertices.len() as u32;
                vertices.push(*v);
            }
        }
        let faces = self
            .faces
            .iter()
            .filter(|f| f.iter().all(|&i| keep[i as usize]))
            .map(|f| [remap[f[0] as usize], remap[f[1] as usize], remap[f[2] as usize]])
            .collect();
        let scalars = self
            .scalars
            .iter()
            .map(|s| ScalarField {
                name: s.name.clone(),
                values: s.values.iter().zip(keep).filter(|(_, k)| **k).map(|(v, _)| *v).collect(),
            })
            .collect();
        TriMesh {
            vertices,
            faces,
            scalars,
        }
    }
}

pub(crate) fn dist(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereGrid {
    pub n_phi: usize,
    pub n_gamma: usize,
    pub radius: f64,
}

impl SphereGrid {
    pub fn new(n_phi: usize, n_gamma: usize, radius: f64) -> Result<Self> {
        let g = Self { n_phi, n_gamma, radius };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        ensure(self.n_phi >= 3, || format!("n_phi must be at least 3, got {}", self.n_phi))?;
        ensure(self.n_gamma >= 3, || format!("n_gamma must be at least 3, got {}", self.n_gamma))?;
        ensure(self.radius > 0.0 && self.radius.is_finite(), || {
            format!("radius must be positive, got {}", self.radius)
        })
    }

    pub fn gamma(&self, row: usize) -> f64 {
        if row == self.n_gamma - 1 {
            1.0
        } else {
            -1.0 + 2.0 * row as f64 / (self.n_gamma - 1) as f64
        }
    }

    pub fn phi(&self, col: usize) -> f64 {
        TAU * col as f64 / self.n_phi as f64
    }

    pub fn vertex_count(&self) -> usize {
        2 + self.n_phi * (self.n_gamma - 2)
    }

    /// Vertex index of `(col, row)`; pole rows map to the pole vertex.
    pub fn index(&self, col: usize, row: usize) -> usize {
        if row == 0 {
            0
        } else if row == self.n_gamma - 1 {
            self.vertex_count() - 1
        } else {
            1 + (row - 1) * self.n_phi + col % self.n_phi
        }
    }

    /// `(col, row)` of a vertex index; poles report column 0.
    pub fn coords(&self, index: usize) -> (usize, usize) {
        if index == 0 {
            (0, 0)
        } else if index == self.vertex_count() - 1 {
            (0, self.n_gamma - 1)
        } else {
            let k = index - 1;
            (k % self.n_phi, 1 + k / self.n_phi)
        }
    }

    pub fn is_pole(&self, index: usize) -> bool {
        index == 0 || index == self.vertex_count() - 1
    }
}

/// Faces of a `(φ, row)` grid closed in φ, with optional collapsed end rows.
fn grid_faces(n_phi: usize, n_rows: usize, index: impl Fn(usize, usize) -> usize, fan_first: bool, fan_last: bool) -> Vec<[u32; 3]> {
    let mut faces = Vec::new();
    for row in 0..n_rows - 1 {
        for col in 0..n_phi {
            let a = index(col, row) as u32;
            let b = index(col + 1, row) as u32;
            let c = index(col + 1, row + 1) as u32;
            let d = index(col, row + 1) as u32;
            if row == 0 && fan_first {
                faces.push([a, c, d]);
            } else if row + 1 == n_rows - 1 && fan_last {
                faces.push([a, b, c]);
            } else {
                faces.push([a, b, c]);
                faces.push([a, c, d]);
            }
        }
    }
    faces
}

/// The exp-sphere of radius `grid.radius` about the identity.
///
/// Carries per-vertex scalars `gamma`, `phi` and `s`.
pub fn sphere_exp_mesh(grid: &SphereGrid) -> Result<TriMesh> {
    grid.validate()?;
    let params: Vec<(f64, f64)> = (0..grid.vertex_count())
        .map(|v| {
            let (col, row) = grid.coords(v);
            let gamma = grid.gamma(row);
            let phi = if grid.is_pole(v) { 0.0 } else { grid.phi(col) };
            (gamma, phi)
        })
        .collect();
    let vertices: Vec<[f64; 3]> = params
        .par_iter()
        .map(|&(gamma, phi)| {
            let spec = GeodesicSpec::new(gamma, phi).expect("grid values are valid");
            geodesic_from_origin(&spec, grid.radius).to_array()
        })
        .collect();
    let faces = grid_faces(grid.n_phi, grid.n_gamma, |c, r| grid.index(c, r), true, true);
    let mut mesh = TriMesh {
        vertices,
        faces,
        scalars: Vec::new(),
    };
    mesh.push_scalar("gamma", params.iter().map(|p| p.0).collect());
    mesh.push_scalar("phi", params.iter().map(|p| p.1).collect());
    mesh.push_scalar("s", vec![grid.radius; params.len()]);
    Ok(mesh)
}

/// Drops vertices strictly inside the metric ball: those with
/// `riemannian_distance(0, v) < radius − tol`. Adds a `distance_defect`
/// scalar `radius − d(0, v)` before clipping.
pub fn clip_to_metric(mesh: &TriMesh, radius: f64, tol: f64) -> Result<TriMesh> {
    let distances: Vec<f64> = mesh
        .vertices
        .par_iter()
        .map(|v| riemannian_distance(&HeisPoint::IDENTITY, &HeisPoint::from(*v)))
        .collect::<Result<_>>()?;
    let mut tagged = mesh.clone();
    tagged.push_scalar("distance_defect", distances.iter().map(|d| radius - d).collect());
    let keep: Vec<bool> = distances.iter().map(|d| *d >= radius - tol).collect();
    Ok(tagged.retain_vertices(&keep))
}

/// Exp-image of the `{X, T}` tangent plane: vertex `(i, j)` is
/// `exp(0, s_j (cos θ_i, 0, sin θ_i))`.
///
/// `theta_range = (start, end)`; a full turn is closed up without duplicating
/// the seam column. When the arc-length range starts at zero the first column
/// collapses to the identity and is emitted as a single apex vertex.
pub fn plane_exp_surface(theta_range: (f64, f64), s_range: (f64, f64), resolution: (usize, usize)) -> Result<TriMesh> {
    let (t0, t1) = theta_range;
    let (s0, s1) = s_range;
    let (n_theta, n_s) = resolution;
    ensure(s0 >= 0.0 && s1 > s0, || format!("invalid arc-length range [{s0}, {s1}]"))?;
    ensure(t1 > t0 && (t1 - t0) <= TAU + 1e-12, || format!("invalid angle range [{t0}, {t1}]"))?;
    ensure(n_theta >= 3 && n_s >= 2, || "resolution must be at least 3 x 2".into())?;
    let closed = ((t1 - t0) - TAU).abs() < 1e-12;
    let cols = if closed { n_theta } else { n_theta + 1 };
    let step = (t1 - t0) / n_theta as f64;
    let apex = s0 == 0.0;

    let theta = |i: usize| t0 + step * i as f64;
    let s_at = |j: usize| s0 + (s1 - s0) * j as f64 / (n_s - 1) as f64;
    let first_row = usize::from(apex);
    let index = |i: usize, j: usize| -> usize {
        if apex && j == 0 {
            0
        } else {
            first_row + (j - first_row) * cols + if closed { i % cols } else { i }
        }
    };

    let mut params = Vec::new();
    if apex {
        params.push((0.0, 0.0));
    }
    for j in first_row..n_s {
        for i in 0..cols {
            params.push((theta(i), s_at(j)));
        }
    }
    let vertices: Vec<[f64; 3]> = params
        .par_iter()
        .map(|&(t, s)| exp_map(&HeisPoint::IDENTITY, &FrameVector::new(s * t.cos(), 0.0, s * t.sin())).to_array())
        .collect();

    let mut faces = Vec::new();
    let quads_per_row = if closed { cols } else { cols - 1 };
    for j in 0..n_s - 1 {
        for i in 0..quads_per_row {
            let a = index(i, j) as u32;
            let b = index(i + 1, j) as u32;
            let c = index(i + 1, j + 1) as u32;
            let d = index(i, j + 1) as u32;
            if apex && j == 0 {
                faces.push([a, c, d]);
            } else {
                faces.push([a, b, c]);
                faces.push([a, c, d]);
            }
        }
    }
    let mut mesh = TriMesh {
        vertices,
        faces,
        scalars: Vec::new(),
    };
    mesh.push_scalar("theta", params.iter().map(|p| p.0).collect());
    mesh.push_scalar("s", params.iter().map(|p| p.1).collect());
    Ok(mesh)
}

/// The exp-sphere cut by the plane through the origin with the given normal;
/// vertices with `v · n ≤ 1e-12` are kept and the cut is left open.
pub fn ball_cutaway_mesh(grid: &SphereGrid, cut_plane_normal: [f64; 3]) -> Result<TriMesh> {
    let len = dist(&cut_plane_normal, &[0.0; 3]);
    ensure(len > 0.0 && len.is_finite(), || "cut-plane normal must be nonzero".into())?;
    let n = cut_plane_normal.map(|c| c / len);
    let mesh = sphere_exp_mesh(grid)?;
    let keep: Vec<bool> = mesh
        .vertices
        .iter()
        .map(|v| v[0] * n[0] + v[1] * n[1] + v[2] * n[2] <= 1e-12)
        .collect();
    Ok(mesh.retain_vertices(&keep))
}

/// `n + 1` points equally spaced in arc length on `[0, s_max]`.
pub fn geodesic_polyline(spec: &GeodesicSpec, s_max: f64, n: usize) -> Result<Vec<HeisPoint>> {
    ensure(n >= 2, || format!("need at least 2 segments, got {n}"))?;
    ensure(s_max.is_finite() && s_max >= 0.0, || format!("invalid s_max {s_max}"))?;
    Ok((0..=n)
        .map(|k| {
            let s = if k == n { s_max } else { s_max * k as f64 / n as f64 };
            geodesic_from_point(spec, s)
        })
        .collect())
}

pub(crate) fn no_singularity(radius: f64) -> HeisError {
    HeisError::NoSingularity { radius }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::inner_product;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn sphere_is_a_closed_valid_mesh() {
        for grid in [SphereGrid::new(3, 3, 1.0).unwrap(), SphereGrid::new(64, 32, 1.0).unwrap()] {
            let m = sphere_exp_mesh(&grid).unwrap();
            m.validate().unwrap();
            assert_eq!(m.vertices.len(), grid.vertex_count());
            assert_eq!(m.euler_characteristic(), 2);
            // closed: every edge is shared by exactly two faces
            let mut count = std::collections::HashMap::new();
            for f in &m.faces {
                for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                    *count.entry((a.min(b), a.max(b))).or_insert(0) += 1;
                }
            }
            assert!(count.values().all(|&c| c == 2));
        }
    }

    #[test]
    fn sphere_poles_and_small_radius() {
        let grid = SphereGrid::new(16, 9, 0.7).unwrap();
        let m = sphere_exp_mesh(&grid).unwrap();
        assert!(dist(&m.vertices[0], &[0.0, 0.0, -0.7]) < 1e-15);
        assert!(dist(m.vertices.last().unwrap(), &[0.0, 0.0, 0.7]) < 1e-15);

        let r = 0.01;
        let m = sphere_exp_mesh(&SphereGrid::new(32, 17, r).unwrap()).unwrap();
        let worst = m
            .vertices
            .iter()
            .map(|v| (dist(v, &[0.0; 3]) - r).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-3 * r, "{worst}");
    }

    #[test]
    fn sphere_rejects_bad_grids() {
        assert!(SphereGrid::new(2, 10, 1.0).is_err());
        assert!(SphereGrid::new(10, 2, 1.0).is_err());
        assert!(SphereGrid::new(10, 10, 0.0).is_err());
    }

    #[test]
    fn faces_point_outward_on_small_spheres() {
        let m = sphere_exp_mesh(&SphereGrid::new(12, 7, 0.5).unwrap()).unwrap();
        for f in &m.faces {
            let [a, b, c] = f.map(|i| m.vertices[i as usize]);
            let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
            let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
            let n = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
            let centre = [(a[0] + b[0] + c[0]) / 3.0, (a[1] + b[1] + c[1]) / 3.0, (a[2] + b[2] + c[2]) / 3.0];
            assert!(n[0] * centre[0] + n[1] * centre[1] + n[2] * centre[2] > 0.0);
        }
    }

    #[test]
    fn plane_surface_contains_axis_lines() {
        let m = plane_exp_surface((0.0, TAU), (0.0, 3.0), (8, 7)).unwrap();
        m.validate().unwrap();
        let theta = m.scalar("theta").unwrap();
        let s = m.scalar("s").unwrap();
        for (k, v) in m.vertices.iter().enumerate() {
            if (theta[k] - FRAC_PI_2).abs() < 1e-12 {
                assert!(dist(v, &[0.0, 0.0, s[k]]) < 1e-15);
            }
            if theta[k] == 0.0 {
                assert_eq!(*v, [s[k], 0.0, 0.0]);
            }
        }
        // open range keeps both end columns
        let open = plane_exp_surface((0.0, PI), (0.5, 2.0), (4, 3)).unwrap();
        open.validate().unwrap();
        assert_eq!(open.vertices.len(), 5 * 3);
    }

    #[test]
    fn cutaway_keeps_one_side() {
        let grid = SphereGrid::new(32, 17, 1.0).unwrap();
        let full = sphere_exp_mesh(&grid).unwrap();
        let half = ball_cutaway_mesh(&grid, [0.0, 1.0, 0.0]).unwrap();
        half.validate().unwrap();
        assert!(half.vertices.iter().all(|v| v[1] <= 1e-12));
        let diff = (half.vertices.len() as f64 - full.vertices.len() as f64 / 2.0).abs();
        assert!(diff <= grid.n_phi as f64, "{} vs {}", half.vertices.len(), full.vertices.len());
    }

    #[test]
    fn polyline_examples() {
        let line = geodesic_polyline(&GeodesicSpec::new(0.0, 0.8).unwrap(), 4.0, 10).unwrap();
        assert_eq!(line.len(), 11);
        for p in &line {
            // collinear with the direction (cos 0.8, sin 0.8, 0)
            assert!((p.x * 0.8f64.sin() - p.y * 0.8f64.cos()).abs() < 1e-12);
            assert_eq!(p.z, 0.0);
        }
        let loop_ = geodesic_polyline(&GeodesicSpec::new(0.5, 0.0).unwrap(), TAU, 50).unwrap();
        assert_eq!(loop_[0], HeisPoint::IDENTITY);
        assert!(loop_[50].euclidean_distance(&HeisPoint::new(0.0, 0.0, 2.5 * PI)) < 1e-12);
        assert!(geodesic_polyline(&GeodesicSpec::new(0.5, 0.0).unwrap(), 1.0, 1).is_err());
    }

    #[test]
    fn polyline_chords_have_metric_length_of_the_step() {
        let spec = GeodesicSpec::from_base(HeisPoint::new(0.5, 1.0, -1.0), 0.4, 1.0).unwrap();
        let n = 200;
        let h = 5.0 / n as f64;
        let pts = geodesic_polyline(&spec, 5.0, n).unwrap();
        for w in pts.windows(2) {
            let mid = HeisPoint::new((w[0].x + w[1].x) / 2.0, (w[0].y + w[1].y) / 2.0, (w[0].z + w[1].z) / 2.0);
            let d = crate::metric::CoordVector::new(w[1].x - w[0].x, w[1].y - w[0].y, w[1].z - w[0].z);
            let len = inner_product(&mid, &d, &d).sqrt();
            assert!((len - h).abs() < 4.0 * h * h, "{len} vs {h}");
        }
    }
}
