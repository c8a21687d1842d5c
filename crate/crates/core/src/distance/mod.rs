//! Distance functions on `Heis³`.
//!
//! * [`cygan_distance`]: the Cygan (Korányi) gauge distance, closed form.
//! * [`riemannian_distance`]: geodesic distance of the left-invariant metric,
//!   computed by shooting from the identity.
//! * [`brute_force_distance`]: grid search over all unit geodesics, kept as an
//!   independent check on the shooting solver.

mod oracle;
mod shooting;

pub use oracle::{brute_force_distance, BruteForceGrid};
pub use shooting::{shoot_candidates, shoot_candidates_with, ShootingOptions, ShootingSolution};

use crate::error::Result;
use crate::group::HeisPoint;

/// Residual tolerance used by [`riemannian_distance`].
pub const DISTANCE_TOL: f64 = 1e-10;

/// Cygan gauge of a single element, `(|x + iy|⁴ + z²)^{1/4}`.
pub fn cygan_gauge(p: &HeisPoint) -> f64 {
    let rho2 = p.x * p.x + p.y * p.y;
    (rho2 * rho2 + p.z * p.z).sqrt().sqrt()
}

/// `ρ_c(p, q) = | ‖ζ − ζ'‖⁴ + (z − z' + Im⟨ζ, ζ'⟩)² |^{1/4}` with
/// `Im⟨ζ, ζ'⟩ = x y' − y x'`, the same convention as the group law. The inner
/// expression is the gauge of `q⁻¹ · p`, so the distance is left-invariant.
pub fn cygan_distance(p: &HeisPoint, q: &HeisPoint) -> f64 {
    let (dx, dy) = (p.x - q.x, p.y - q.y);
    let dz = p.z - q.z + (p.x * q.y - p.y * q.x);
    cygan_gauge(&HeisPoint::new(dx, dy, dz))
}

/// Returns `(ρ_c(δ_λ p, δ_λ q), λ ρ_c(p, q))` for the dilation
/// `δ_λ(x, y, z) = (λx, λy, λ²z)`. The two agree: balls grow linearly in the
/// horizontal directions and quadratically in the vertical one.
pub fn cygan_scaling_check(p: &HeisPoint, q: &HeisPoint, lambda: f64) -> (f64, f64) {
    (
        cygan_distance(&p.dilate(lambda), &q.dilate(lambda)),
        lambda * cygan_distance(p, q),
    )
}

/// Length of the shortest geodesic found from `p` to `q`.
///
/// The problem is moved to the identity by left translation, so
/// `d(g·p, g·q) = d(p, q)` holds up to rounding of the translated target.
pub fn riemannian_distance(p: &HeisPoint, q: &HeisPoint) -> Result<f64> {
    if p == q {
        return Ok(0.0);
    }
    distance_from_identity(&(p.inverse() * *q))
}

pub fn distance_from_identity(target: &HeisPoint) -> Result<f64> {
    if *target == HeisPoint::IDENTITY {
        return Ok(0.0);
    }
    let candidates = shoot_candidates(target, DISTANCE_TOL)?;
    // sorted by arc length, never empty on success
    Ok(candidates[0].s)
}
