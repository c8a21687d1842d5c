//! Brute-force distance oracle.
//!
//! Evaluates every unit geodesic on a `(γ, φ, s)` lattice, keeps lattice
//! nodes whose endpoint is a local minimum of the distance to the target and
//! lies within one lattice cell of it, and refines each of those with a
//! Levenberg-Marquardt solve on the full three-parameter endpoint map. The
//! shortest refined geodesic is returned. Nothing here uses the reduced
//! `(γ, s)` formulation of the shooting solver.

use std::f64::consts::{FRAC_PI_2, TAU};

use rayon::prelude::*;

use crate::error::{ensure, HeisError, Result};
use crate::geodesic::{geodesic_from_origin, GeodesicSpec};
use crate::group::HeisPoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceGrid {
    pub n_gamma: usize,
    pub n_phi: usize,
    pub n_s: usize,
}

impl BruteForceGrid {
    pub const fn new(n_gamma: usize, n_phi: usize, n_s: usize) -> Self {
        Self { n_gamma, n_phi, n_s }
    }

    fn gamma(&self, i: usize) -> f64 {
        -1.0 + 2.0 * i as f64 / (self.n_gamma - 1) as f64
    }

    fn phi(&self, j: usize) -> f64 {
        TAU * j as f64 / self.n_phi as f64
    }

    fn s(&self, k: usize, s_max: f64) -> f64 {
        s_max * (k + 1) as f64 / self.n_s as f64
    }
}

fn endpoint(theta: f64, phi: f64, s: f64) -> HeisPoint {
    let gamma = theta.sin().clamp(-1.0, 1.0);
    match GeodesicSpec::new(gamma, phi) {
        Ok(spec) => geodesic_from_origin(&spec, s),
        Err(_) => HeisPoint::new(f64::NAN, f64::NAN, f64::NAN),
    }
}

fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let det = crate::metric::det3(&a);
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    let mut out = [0.0; 3];
    for (c, o) in out.iter_mut().enumerate() {
        let mut m = a;
        for r in 0..3 {
            m[r][c] = b[r];
        }
        *o = crate::metric::det3(&m) / det;
    }
    Some(out)
}

/// Levenberg-Marquardt on `(θ, φ, s) ↦ endpoint − target`.
fn refine(target: &HeisPoint, theta: f64, phi: f64, s: f64) -> Option<(f64, f64)> {
    let resid = |p: [f64; 3]| {
        let e = endpoint(p[0], p[1], p[2]);
        [e.x - target.x, e.y - target.y, e.z - target.z]
    };
    let sq = |f: [f64; 3]| f.iter().map(|v| v * v).sum::<f64>();
    let mut p = [theta, phi, s];
    let mut f = resid(p);
    let mut lambda = 1e-3;
    for _ in 0..200 {
        if sq(f).sqrt() < 1e-13 * (1.0 + target.z.abs()) {
            break;
        }
        let mut jac = [[0.0; 3]; 3];
        for c in 0..3 {
            let h = 1e-7 * if c == 2 { p[2].max(1.0) } else { 1.0 };
            let (mut pp, mut pm) = (p, p);
            pp[c] += h;
            pm[c] -= h;
            let (fp, fm) = (resid(pp), resid(pm));
            for r in 0..3 {
                jac[r][c] = (fp[r] - fm[r]) / (2.0 * h);
            }
        }
        let mut jtj = [[0.0; 3]; 3];
        let mut jtf = [0.0; 3];
        for a in 0..3 {
            for b in 0..3 {
                jtj[a][b] = (0..3).map(|r| jac[r][a] * jac[r][b]).sum();
            }
            jtf[a] = -(0..3).map(|r| jac[r][a] * f[r]).sum::<f64>();
        }
        let mut improved = false;
        for _ in 0..12 {
            let mut m = jtj;
            for (d, row) in m.iter_mut().enumerate() {
                row[d] += lambda * (jtj[d][d] + 1e-12);
            }
            let Some(step) = solve3(m, jtf) else {
                lambda *= 10.0;
                continue;
            };
            let mut np = [p[0] + step[0], p[1] + step[1], p[2] + step[2]];
            np[0] = np[0].clamp(-FRAC_PI_2, FRAC_PI_2);
            if np[2] <= 0.0 {
                np[2] = 0.5 * p[2];
            }
            let nf = resid(np);
            if sq(nf) < sq(f) {
                p = np;
                f = nf;
                lambda = (lambda / 3.0).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    let gap = sq(f).sqrt();
    (gap.is_finite()).then_some((p[2], gap))
}

/// Upper bound on the distance from the identity to `target` by exhaustive
/// search over unit geodesics of length at most `s_max`, followed by one local
/// refinement of every promising lattice node.
pub fn brute_force_distance(target: &HeisPoint, grid: BruteForceGrid, s_max: f64) -> Result<f64> {
    ensure(grid.n_gamma >= 16 && grid.n_phi >= 16 && grid.n_s >= 16, || {
        "each grid dimension must be at least 16".into()
    })?;
    ensure(s_max > 0.0 && s_max.is_finite(), || format!("s_max must be positive, got {s_max}"))?;
    if *target == HeisPoint::IDENTITY {
        return Ok(0.0);
    }
    let (ng, nphi, ns) = (grid.n_gamma, grid.n_phi, grid.n_s);
    let idx = |i: usize, j: usize, k: usize| (i * nphi + j) * ns + k;

    let points: Vec<HeisPoint> = (0..ng * nphi)
        .into_par_iter()
        .flat_map_iter(|row| {
            let (i, j) = (row / nphi, row % nphi);
            let spec = GeodesicSpec::new(grid.gamma(i), grid.phi(j)).expect("grid values are valid");
            (0..ns).map(move |k| geodesic_from_origin(&spec, grid.s(k, s_max)))
        })
        .collect();
    let err: Vec<f64> = points.par_iter().map(|p| p.euclidean_distance(target)).collect();

    // node -> axis neighbours, φ periodic
    let neighbours = |i: usize, j: usize, k: usize| {
        let mut out = Vec::with_capacity(6);
        if i > 0 {
            out.push(idx(i - 1, j, k));
        }
        if i + 1 < ng {
            out.push(idx(i + 1, j, k));
        }
        out.push(idx(i, (j + 1) % nphi, k));
        out.push(idx(i, (j + nphi - 1) % nphi, k));
        if k > 0 {
            out.push(idx(i, j, k - 1));
        }
        if k + 1 < ns {
            out.push(idx(i, j, k + 1));
        }
        out
    };

    // local minima of the endpoint error that lie within their own cell;
    // on the φ-degenerate pole rows keep one node per s
    let mut best_per_row: std::collections::BTreeMap<(usize, usize, usize), (f64, usize)> = Default::default();
    for i in 0..ng {
        for j in 0..nphi {
            for k in 0..ns {
                let n = idx(i, j, k);
                let e = err[n];
                let nb = neighbours(i, j, k);
                if nb.iter().any(|&m| err[m] < e) {
                    continue;
                }
                let cell = nb
                    .iter()
                    .map(|&m| points[m].euclidean_distance(&points[n]))
                    .fold(0.0, f64::max);
                if e > cell {
                    continue;
                }
                let key = if i == 0 || i + 1 == ng { (i, 0, k) } else { (i, j, k) };
                let slot = best_per_row.entry(key).or_insert((e, n));
                if e < slot.0 {
                    *slot = (e, n);
                }
            }
        }
    }
    if best_per_row.is_empty() {
        return Err(HeisError::Unreachable { s_max });
    }
    let mut seeds: Vec<(f64, usize)> = best_per_row.into_values().collect();
    seeds.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    seeds.truncate(256);

    // φ is free on the pole rows, so restart those just off the pole along
    // every lattice azimuth
    let off_pole = 0.5 * (FRAC_PI_2 - grid.gamma(ng - 2).asin());
    let starts: Vec<[f64; 3]> = seeds
        .iter()
        .flat_map(|&(_, n)| {
            let (i, rest) = (n / (nphi * ns), n % (nphi * ns));
            let (j, k) = (rest / ns, rest % ns);
            let s = grid.s(k, s_max);
            let theta = grid.gamma(i).clamp(-1.0, 1.0).asin();
            if i == 0 || i + 1 == ng {
                let near = theta - theta.signum() * off_pole;
                std::iter::once([theta, 0.0, s]).chain((0..nphi).map(|j| [near, grid.phi(j), s])).collect::<Vec<_>>()
            } else {
                vec![[theta, grid.phi(j), s]]
            }
        })
        .collect();

    let scale = 1.0 + target.z.abs() + target.x.hypot(target.y);
    let refined: Vec<f64> = starts
        .par_iter()
        .filter_map(|&[theta, phi, s]| {
            let (s, gap) = refine(target, theta, phi, s)?;
            (gap < 1e-9 * scale && s <= 1.5 * s_max).then_some(s)
        })
        .collect();
    refined
        .into_iter()
        .min_by(f64::total_cmp)
        .ok_or(HeisError::Unreachable { s_max })
}
