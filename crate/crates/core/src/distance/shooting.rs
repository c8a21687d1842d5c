//! Geodesic shooting from the identity.
//!
//! Rotating the initial direction `φ` rotates the endpoint about the z-axis,
//! so the planar chord and the height of the endpoint depend on `(γ, s)` only:
//!
//! ```text
//! chord(γ, s) = r s · sinc(γs)              (signed; |chord| = ρ)
//! z(γ, s)     = γ s + r² s² · (u − sin u)/u²,  u = 2γs
//! ```
//!
//! and the endpoint's planar angle is `φ + γs` (plus `π` when the chord is
//! negative). Shooting therefore solves two equations in `(γ, s)` by Newton's
//! method, with `γ = sin θ` so that `r = cos θ` stays smooth at the poles,
//! and recovers `φ` from the target's azimuth afterwards.
//!
//! Targets on the z-axis are solved in closed form: the chord vanishes when
//! `r = 0` (the vertical line) or when `γs = kπ`, which gives
//! `γ² = kπ / (2|z| − kπ)` and `s² = kπ (2|z| − kπ)` for every `k ≥ 1` with
//! `kπ < |z|`. Any `φ` reaches the target on those branches.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, HeisError, Result};
use crate::geodesic::{geodesic_from_origin, normalize_angle, sinc, sine_remainder, GeodesicSpec};
use crate::group::HeisPoint;

/// A geodesic from the identity reaching a target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootingSolution {
    pub spec: GeodesicSpec,
    /// Arc length, always positive.
    pub s: f64,
    /// Euclidean gap between the geodesic endpoint and the target.
    pub residual: f64,
    /// The target is on the z-axis, so every `φ` gives the same endpoint;
    /// `spec.phi()` is the representative `0`.
    pub azimuth_free: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingOptions {
    pub gamma_seeds: usize,
    pub s_seeds: usize,
    /// Upper bound of the seeded arc-length range.
    pub s_cap: f64,
    pub max_iter: usize,
    /// Two solutions are the same when `|Δγ| + |Δφ| + |Δs|` is below this.
    pub dedup: f64,
}

impl Default for ShootingOptions {
    fn default() -> Self {
        Self {
            gamma_seeds: 32,
            s_seeds: 128,
            s_cap: 100.0,
            max_iter: 50,
            dedup: 1e-6,
        }
    }
}

impl ShootingOptions {
    /// Largest seeded arc length on the row with vertical component `gamma`.
    /// Roughly two returns to the axis, `4π/|γ|`.
    pub fn seed_range(&self, gamma: f64) -> f64 {
        (4.0 * PI / gamma.abs().max(0.05)).min(self.s_cap)
    }
}

/// Signed planar chord and height at `(θ, s)` with `γ = sin θ`, `r = cos θ`.
fn profile(theta: f64, s: f64) -> (f64, f64) {
    let (g, r) = theta.sin_cos();
    let w = g * s;
    let chord = r * s * sinc(w);
    let z = w + r * r * s * s * sine_remainder(2.0 * w);
    (chord, z)
}

struct Problem {
    rho: f64,
    z: f64,
    tol: f64,
    s_limit: f64,
    max_iter: usize,
}

impl Problem {
    fn residual(&self, sign: f64, theta: f64, s: f64) -> [f64; 2] {
        let (c, z) = profile(theta, s);
        [c - sign * self.rho, z - self.z]
    }

    /// Newton iteration on `(θ, s)` with a central-difference Jacobian and
    /// step halving. Returns the converged `(θ, s)`.
    fn newton(&self, sign: f64, mut theta: f64, mut s: f64) -> Option<(f64, f64)> {
        let norm = |f: [f64; 2]| f[0].hypot(f[1]);
        let mut f = self.residual(sign, theta, s);
        let mut polish = 0;
        for _ in 0..self.max_iter {
            let n = norm(f);
            if n < self.tol {
                // a couple of extra steps tighten the solution to rounding level
                polish += 1;
                if polish > 2 {
                    break;
                }
            }
            let ht = 1e-7;
            let hs = 1e-7 * s.max(1.0);
            let ftp = self.residual(sign, theta + ht, s);
            let ftm = self.residual(sign, theta - ht, s);
            let fsp = self.residual(sign, theta, s + hs);
            let fsm = self.residual(sign, theta, s - hs);
            let j = [
                [(ftp[0] - ftm[0]) / (2.0 * ht), (fsp[0] - fsm[0]) / (2.0 * hs)],
                [(ftp[1] - ftm[1]) / (2.0 * ht), (fsp[1] - fsm[1]) / (2.0 * hs)],
            ];
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            if det == 0.0 || !det.is_finite() {
                break;
            }
            let dt = -(j[1][1] * f[0] - j[0][1] * f[1]) / det;
            let ds = -(-j[1][0] * f[0] + j[0][0] * f[1]) / det;
            let mut lambda = 1.0;
            let mut accepted = false;
            while lambda > 1e-4 {
                let nt = (theta + lambda * dt).clamp(-FRAC_PI_2, FRAC_PI_2);
                let mut ns = s + lambda * ds;
                if ns <= 0.0 {
                    ns = 0.5 * s;
                }
                let nf = self.residual(sign, nt, ns);
                if norm(nf) < n || (n < self.tol && norm(nf) <= n) {
                    theta = nt;
                    s = ns;
                    f = nf;
                    accepted = true;
                    break;
                }
                lambda *= 0.5;
            }
            if !accepted || s > self.s_limit {
                break;
            }
        }
        (norm(f) < self.tol).then_some((theta, s))
    }
}

fn solution_from(target: &HeisPoint, gamma: f64, s: f64, azimuth_free: bool) -> Option<ShootingSolution> {
    let base = GeodesicSpec::new(gamma.clamp(-1.0, 1.0), 0.0).ok()?;
    let phi = if azimuth_free || base.r() == 0.0 {
        0.0
    } else {
        let end = geodesic_from_origin(&base, s);
        normalize_angle(target.y.atan2(target.x) - end.y.atan2(end.x))
    };
    let spec = GeodesicSpec::new(base.gamma(), phi).ok()?;
    let residual = geodesic_from_origin(&spec, s).euclidean_distance(target);
    Some(ShootingSolution {
        spec,
        s,
        residual,
        azimuth_free,
    })
}

fn axis_solutions(target: &HeisPoint) -> Vec<ShootingSolution> {
    let height = target.z.abs();
    let sign = target.z.signum();
    let mut out = Vec::new();
    out.extend(solution_from(target, sign, height, true));
    let mut k = 1.0;
    while k * PI < height {
        let kp = k * PI;
        let gamma = sign * (kp / (2.0 * height - kp)).sqrt();
        let s = (kp * (2.0 * height - kp)).sqrt();
        out.extend(solution_from(target, gamma, s, true));
        k += 1.0;
    }
    out
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).abs() % (2.0 * PI);
    d.min(2.0 * PI - d)
}

fn same(a: &ShootingSolution, b: &ShootingSolution, eps: f64) -> bool {
    (a.spec.gamma() - b.spec.gamma()).abs() + angle_gap(a.spec.phi(), b.spec.phi()) + (a.s - b.s).abs() < eps
}

/// All geodesics from the identity found to end within `tol` of `target`,
/// deduplicated and sorted by arc length.
pub fn shoot_candidates(target: &HeisPoint, tol: f64) -> Result<Vec<ShootingSolution>> {
    shoot_candidates_with(target, tol, &ShootingOptions::default())
}

pub fn shoot_candidates_with(
    target: &HeisPoint,
    tol: f64,
    opts: &ShootingOptions,
) -> Result<Vec<ShootingSolution>> {
    ensure(tol > 0.0, || format!("tolerance must be positive, got {tol}"))?;
    ensure(target.is_finite(), || "target must be finite".into())?;
    ensure(*target != HeisPoint::IDENTITY, || "target must differ from the identity".into())?;
    ensure(opts.gamma_seeds >= 1 && opts.s_seeds >= 1, || "empty seed grid".into())?;

    let rho = target.x.hypot(target.y);
    let mut found: Vec<ShootingSolution> = if rho <= 1e-14 * (1.0 + target.z.abs()) {
        axis_solutions(target)
    } else {
        let problem = Problem {
            rho,
            z: target.z,
            // Newton works on (chord, z); leave headroom for the final
            // Euclidean check, which sees the same residual up to rounding
            tol: 0.5 * tol,
            s_limit: 2.0 * opts.s_cap,
            max_iter: opts.max_iter,
        };
        let ng = opts.gamma_seeds;
        let seeds: Vec<(f64, f64)> = (0..ng)
            .flat_map(|i| {
                let gamma = -1.0 + (2 * i + 1) as f64 / ng as f64;
                let range = opts.seed_range(gamma);
                (0..opts.s_seeds).map(move |j| (gamma, range * (j + 1) as f64 / opts.s_seeds as f64))
            })
            .collect();
        let per_seed: Vec<Option<ShootingSolution>> = seeds
            .par_iter()
            .map(|&(gamma, s)| {
                let theta = gamma.asin();
                let (chord, _) = profile(theta, s);
                let sign = if chord < 0.0 { -1.0 } else { 1.0 };
                let (theta, s) = problem.newton(sign, theta, s)?;
                solution_from(target, theta.sin(), s, false)
            })
            .collect();
        per_seed.into_iter().flatten().collect()
    };

    found.retain(|c| c.residual <= tol && c.s > 0.0);
    found.sort_by(|a, b| a.s.total_cmp(&b.s).then(a.spec.gamma().total_cmp(&b.spec.gamma())));
    let mut unique: Vec<ShootingSolution> = Vec::with_capacity(found.len());
    for c in found {
        if !unique.iter().any(|u| same(u, &c, opts.dedup)) {
            unique.push(c);
        }
    }
    if unique.is_empty() {
        return Err(HeisError::NoConvergence {
            x: target.x,
            y: target.y,
            z: target.z,
            tol,
        });
    }
    Ok(unique)
}
