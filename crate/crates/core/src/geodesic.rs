//! Unit-speed geodesics in closed form.
//!
//! Writing the velocity as `α X + β Y + γ T`, the geodesic equation reduces to
//! `α' = −2γβ`, `β' = 2γα`, `γ' = 0`, so `γ` is constant and the planar part
//! rotates at rate `2γ`:
//!
//! ```text
//! α(s) = r cos(2γs + φ),   β(s) = r sin(2γs + φ),   r² + γ² = 1.
//! ```
//!
//! Integrating `ẋ = α`, `ẏ = β`, `ż = γ − αy + βx` from the identity gives
//!
//! ```text
//! x(s) = r/(2γ) · (sin(2γs + φ) − sin φ)
//! y(s) = r/(2γ) · (cos φ − cos(2γs + φ))
//! z(s) = (1 + γ²)/(2γ) · s − (1 − γ²)/(4γ²) · sin(2γs)
//! ```
//!
//! for `γ ≠ 0` and the straight line `(s cos φ, s sin φ, 0)` for `γ = 0`.
//! Both terms of `z` grow like `1/γ`; they cancel to `O(γ)`, so below
//! [`SMALL_GAMMA`] the same curve is evaluated as
//!
//! ```text
//! x = r s · sinc(γs) · cos(φ + γs)
//! y = r s · sinc(γs) · sin(φ + γs)
//! z = γ s + r² s² · (u − sin u)/u²,   u = 2γs
//! ```
//!
//! with series expansions for the two bracketed functions near zero.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};
use crate::group::HeisPoint;
use crate::metric::{frame_to_coord, CoordVector, FrameVector};

/// Below this `|γ|` the cancellation-free form is used.
pub const SMALL_GAMMA: f64 = 1e-4;

/// Initial data of a unit-speed geodesic: base point, planar speed `r`,
/// initial planar direction `φ` and vertical component `γ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicSpec {
    base: HeisPoint,
    r: f64,
    phi: f64,
    gamma: f64,
}

impl GeodesicSpec {
    /// Geodesic from the identity with `r = √(1 − γ²)`.
    pub fn new(gamma: f64, phi: f64) -> Result<Self> {
        Self::from_base(HeisPoint::IDENTITY, gamma, phi)
    }

    pub fn from_base(base: HeisPoint, gamma: f64, phi: f64) -> Result<Self> {
        ensure(gamma.is_finite() && gamma.abs() <= 1.0, || {
            format!("gamma must lie in [-1, 1], got {gamma}")
        })?;
        ensure(phi.is_finite(), || format!("phi must be finite, got {phi}"))?;
        ensure(base.is_finite(), || "base point must be finite".to_string())?;
        let r = (1.0 - gamma * gamma).max(0.0).sqrt();
        let phi = if r == 0.0 { 0.0 } else { normalize_angle(phi) };
        Ok(Self { base, r, phi, gamma })
    }

    /// Splits a nonzero frame velocity into a unit-speed spec and its speed.
    pub fn from_velocity(base: HeisPoint, v: &FrameVector) -> Option<(Self, f64)> {
        let speed = v.norm();
        if speed == 0.0 || !speed.is_finite() {
            return None;
        }
        let gamma = (v.c / speed).clamp(-1.0, 1.0);
        let planar = v.a.hypot(v.b);
        let phi = if planar == 0.0 { 0.0 } else { v.b.atan2(v.a) };
        let mut spec = Self::from_base(base, gamma, phi).ok()?;
        // keep the planar speed consistent with the input direction
        spec.r = planar / speed;
        if spec.r == 0.0 {
            spec.phi = 0.0;
        }
        Some((spec, speed))
    }

    pub fn base(&self) -> HeisPoint {
        self.base
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn with_base(mut self, base: HeisPoint) -> Self {
        self.base = base;
        self
    }

    /// Initial velocity `(r cos φ, r sin φ, γ)`.
    pub fn initial_velocity(&self) -> FrameVector {
        FrameVector::new(self.r * self.phi.cos(), self.r * self.phi.sin(), self.gamma)
    }
}

/// Maps an angle into `[0, 2π)`.
pub fn normalize_angle(a: f64) -> f64 {
    let w = a.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Velocity in the frame at arc length `s`.
pub fn velocity_frame_at(spec: &GeodesicSpec, s: f64) -> FrameVector {
    let angle = 2.0 * spec.gamma * s + spec.phi;
    FrameVector::new(spec.r * angle.cos(), spec.r * angle.sin(), spec.gamma)
}

/// `sin(w)/w`.
pub(crate) fn sinc(w: f64) -> f64 {
    if w.abs() < 1.0 {
        // Σ (−w²)^k / (2k+1)!
        let w2 = w * w;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..12 {
            term *= -w2 / ((2 * k) as f64 * (2 * k + 1) as f64);
            sum += term;
        }
        sum
    } else {
        w.sin() / w
    }
}

/// `(u − sin u)/u²`, odd in `u`.
pub(crate) fn sine_remainder(u: f64) -> f64 {
    if u.abs() < 1.0 {
        // Σ (−1)^k u^(2k+1) / (2k+3)!
        let u2 = u * u;
        let mut term = u / 6.0;
        let mut sum = term;
        for k in 1..12 {
            term *= -u2 / ((2 * k + 2) as f64 * (2 * k + 3) as f64);
            sum += term;
        }
        sum
    } else {
        (u - u.sin()) / (u * u)
    }
}

/// Point at arc length `s` on the geodesic from the identity, ignoring the
/// spec's base point.
pub fn geodesic_from_origin(spec: &GeodesicSpec, s: f64) -> HeisPoint {
    let (r, phi, g) = (spec.r, spec.phi, spec.gamma);
    if g == 0.0 {
        HeisPoint::new(r * phi.cos() * s, r * phi.sin() * s, 0.0)
    } else if g.abs() < SMALL_GAMMA {
        small_gamma_form(spec, s)
    } else {
        trigonometric_form(spec, s)
    }
}

/// The trigonometric closed form, valid for `γ ≠ 0`.
pub fn trigonometric_form(spec: &GeodesicSpec, s: f64) -> HeisPoint {
    let (r, phi, g) = (spec.r, spec.phi, spec.gamma);
    let angle = 2.0 * g * s + phi;
    let k = r / (2.0 * g);
    HeisPoint::new(
        k * (angle.sin() - phi.sin()),
        k * (phi.cos() - angle.cos()),
        (1.0 + g * g) / (2.0 * g) * s - (1.0 - g * g) / (4.0 * g * g) * (2.0 * g * s).sin(),
    )
}

/// Cancellation-free form, valid for every `γ` including zero.
pub fn small_gamma_form(spec: &GeodesicSpec, s: f64) -> HeisPoint {
    let (r, phi, g) = (spec.r, spec.phi, spec.gamma);
    let w = g * s;
    let chord = r * s * sinc(w);
    let mid = phi + w;
    let z = w + (1.0 - g * g) * s * s * sine_remainder(2.0 * w);
    HeisPoint::new(chord * mid.cos(), chord * mid.sin(), z)
}

/// Geodesic from `spec.base`, obtained by left-translating the one from the
/// identity.
pub fn geodesic_from_point(spec: &GeodesicSpec, s: f64) -> HeisPoint {
    if s == 0.0 {
        return spec.base;
    }
    spec.base * geodesic_from_origin(spec, s)
}

/// Riemannian exponential at `base` of the frame vector `v`.
pub fn exp_map(base: &HeisPoint, v: &FrameVector) -> HeisPoint {
    match GeodesicSpec::from_velocity(*base, v) {
        None => *base,
        Some((spec, speed)) => geodesic_from_point(&spec, speed),
    }
}

/// Position and velocity at arc length `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicSample {
    pub s: f64,
    pub point: HeisPoint,
    pub velocity_frame: FrameVector,
    pub velocity_coord: CoordVector,
}

impl GeodesicSample {
    pub fn new(s: f64, point: HeisPoint, velocity_frame: FrameVector) -> Self {
        Self {
            s,
            point,
            velocity_frame,
            velocity_coord: frame_to_coord(&point, &velocity_frame),
        }
    }
}

pub fn sample(spec: &GeodesicSpec, s: f64) -> GeodesicSample {
    GeodesicSample::new(s, geodesic_from_point(spec, s), velocity_frame_at(spec, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::inner_product;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn close(a: HeisPoint, b: HeisPoint, tol: f64) -> bool {
        a.euclidean_distance(&b) <= tol
    }

    #[test]
    fn spec_construction() {
        let s = GeodesicSpec::new(0.6, -FRAC_PI_2).unwrap();
        assert!((s.r() - 0.8).abs() < 1e-15);
        assert!((s.phi() - 1.5 * PI).abs() < 1e-15);
        assert_eq!(GeodesicSpec::new(1.0, 2.0).unwrap().phi(), 0.0);
        assert!(GeodesicSpec::new(1.5, 0.0).is_err());
        assert!(GeodesicSpec::new(f64::NAN, 0.0).is_err());
        assert_eq!(normalize_angle(-1e-18), 0.0);
        assert!(normalize_angle(-1e-18) < TAU);
    }

    #[test]
    fn velocity_examples() {
        let v = velocity_frame_at(&GeodesicSpec::new(1.0, 0.0).unwrap(), 3.7);
        assert_eq!(v, FrameVector::new(0.0, 0.0, 1.0));
        let v = velocity_frame_at(&GeodesicSpec::new(0.0, 0.0).unwrap(), 12.0);
        assert_eq!(v, FrameVector::new(1.0, 0.0, 0.0));
        let v = velocity_frame_at(&GeodesicSpec::new(0.5, 0.0).unwrap(), PI);
        let want = FrameVector::new(-(3f64.sqrt()) / 2.0, 0.0, 0.5);
        assert!((v - want).norm() < 1e-15);
    }

    #[test]
    fn closed_form_examples() {
        let vertical = GeodesicSpec::new(1.0, 0.0).unwrap();
        for s in [0.5, 2.0, 17.0] {
            assert!(close(geodesic_from_origin(&vertical, s), HeisPoint::new(0.0, 0.0, s), 1e-15 * s));
        }
        let down = GeodesicSpec::new(-1.0, 0.0).unwrap();
        assert!(close(geodesic_from_origin(&down, 3.0), HeisPoint::new(0.0, 0.0, -3.0), 1e-14));

        let flat = GeodesicSpec::new(0.0, 0.0).unwrap();
        assert_eq!(geodesic_from_origin(&flat, 2.5), HeisPoint::new(2.5, 0.0, 0.0));

        let half = GeodesicSpec::new(0.5, 0.0).unwrap();
        let p = geodesic_from_origin(&half, TAU);
        assert!(close(p, HeisPoint::new(0.0, 0.0, 2.5 * PI), 1e-13), "{p:?}");
    }

    #[test]
    fn translated_examples() {
        let spec = GeodesicSpec::from_base(HeisPoint::new(1.0, 2.0, 3.0), 0.3, 1.0).unwrap();
        assert_eq!(geodesic_from_point(&spec, 0.0), HeisPoint::new(1.0, 2.0, 3.0));

        let spec = GeodesicSpec::from_base(HeisPoint::new(0.0, 0.0, 5.0), 1.0, 0.0).unwrap();
        assert!(close(geodesic_from_point(&spec, 2.0), HeisPoint::new(0.0, 0.0, 7.0), 1e-15));

        let spec = GeodesicSpec::from_base(HeisPoint::new(1.0, 0.0, 0.0), 0.0, FRAC_PI_2).unwrap();
        assert!(close(geodesic_from_point(&spec, 1.0), HeisPoint::new(1.0, 1.0, 1.0), 1e-15));
    }

    #[test]
    fn exp_map_examples() {
        let o = HeisPoint::IDENTITY;
        assert_eq!(exp_map(&o, &FrameVector::ZERO), o);
        let p = exp_map(&o, &FrameVector::new(0.0, 0.0, 2.5));
        assert!(close(p, HeisPoint::new(0.0, 0.0, 2.5), 1e-15));
        let b = HeisPoint::new(0.2, -0.4, 1.0);
        assert_eq!(exp_map(&b, &FrameVector::ZERO), b);
        // exp(v) equals the unit-speed geodesic at s = |v|
        let v = FrameVector::new(0.3, 0.4, 1.2);
        let (spec, speed) = GeodesicSpec::from_velocity(b, &v).unwrap();
        assert!((speed - 1.3).abs() < 1e-15);
        assert!((spec.initial_velocity() - (1.0 / 1.3) * v).norm() < 1e-15);
        assert_eq!(exp_map(&b, &v), geodesic_from_point(&spec, speed));
    }

    #[test]
    fn small_gamma_series_matches_closed_form_at_threshold() {
        for phi in [0.0, 1.0, 2.5, 4.0] {
            for s in [0.1, 1.0, 5.0, 10.0] {
                let lo = GeodesicSpec::new(SMALL_GAMMA - 1e-6, phi).unwrap();
                let at = GeodesicSpec::new(SMALL_GAMMA, phi).unwrap();
                let hi = GeodesicSpec::new(SMALL_GAMMA + 1e-6, phi).unwrap();
                let (a, b, c) = (
                    geodesic_from_origin(&lo, s),
                    geodesic_from_origin(&at, s),
                    geodesic_from_origin(&hi, s),
                );
                // the curve moves by O(1e-6 · s³) between the three γ values
                let drift = 1e-6 * (s + s * s * s);
                assert!(a.euclidean_distance(&b) < drift + 1e-9);
                assert!(b.euclidean_distance(&c) < drift + 1e-9);
            }
        }
    }

    #[test]
    fn both_forms_agree_near_threshold() {
        for gamma in [SMALL_GAMMA - 1e-6, SMALL_GAMMA, SMALL_GAMMA + 1e-6, 0.01, 0.3] {
            for phi in [0.0, 2.0, 5.5] {
                let spec = GeodesicSpec::new(gamma, phi).unwrap();
                for s in [0.01, 1.0, 10.0] {
                    let a = trigonometric_form(&spec, s);
                    let b = small_gamma_form(&spec, s);
                    assert!(a.euclidean_distance(&b) < 1e-10, "{gamma} {s}: {a:?} {b:?}");
                }
            }
        }
        let line = small_gamma_form(&GeodesicSpec::new(1e-12, 0.4).unwrap(), 3.0);
        let exact = geodesic_from_origin(&GeodesicSpec::new(0.0, 0.4).unwrap(), 3.0);
        assert!(line.euclidean_distance(&exact) < 1e-10);
    }

    #[test]
    fn series_helpers_agree_with_direct_formulas() {
        for w in [0.3, 0.7, 0.99, -0.5] {
            assert!((sinc(w) - w.sin() / w).abs() < 1e-15);
            assert!((sine_remainder(w) - (w - w.sin()) / (w * w)).abs() < 1e-14);
        }
        for w in [1.0f64, -1.0, 1.0 - 1e-12] {
            let direct = (w - w.sin()) / (w * w);
            assert!((sine_remainder(w) - direct).abs() < 1e-15);
            assert!((sinc(w) - w.sin() / w).abs() < 1e-15);
        }
        assert_eq!(sinc(0.0), 1.0);
        assert_eq!(sine_remainder(0.0), 0.0);
    }

    #[test]
    fn planar_chord_returns_to_axis() {
        for gamma in [0.2, -0.45, 0.9, 0.05] {
            for phi in [0.0, 1.3] {
                let spec = GeodesicSpec::new(gamma, phi).unwrap();
                for s in [0.4, 1.9, 7.0] {
                    let p = geodesic_from_origin(&spec, s);
                    let chord2 = (spec.r() / gamma).powi(2) * (gamma * s).sin().powi(2);
                    assert!((p.x * p.x + p.y * p.y - chord2).abs() < 1e-12 * (1.0 + chord2));
                }
                let p = geodesic_from_origin(&spec, PI / gamma.abs());
                assert!(p.x.abs() < 1e-9 && p.y.abs() < 1e-9, "{p:?}");
            }
        }
    }

    #[test]
    fn samples_are_unit_speed() {
        for gamma in [-0.99, -0.3, 0.0, 5e-5, 0.7, 1.0] {
            let spec = GeodesicSpec::from_base(HeisPoint::new(1.0, -2.0, 0.5), gamma, 2.0).unwrap();
            for s in [0.0, 0.5, 3.0, 9.5] {
                let smp = sample(&spec, s);
                assert!((smp.velocity_frame.norm() - 1.0).abs() < 1e-12);
                let q = inner_product(&smp.point, &smp.velocity_coord, &smp.velocity_coord);
                assert!((q - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn velocity_satisfies_geodesic_equation() {
        let h = 1e-5;
        for gamma in [-0.8, 0.0, 0.35, 0.95] {
            let spec = GeodesicSpec::new(gamma, 0.7).unwrap();
            for s in [0.3, 2.0, 6.0] {
                let (vm, v, vp) = (
                    velocity_frame_at(&spec, s - h),
                    velocity_frame_at(&spec, s),
                    velocity_frame_at(&spec, s + h),
                );
                let d = (1.0 / (2.0 * h)) * (vp - vm);
                let rhs = FrameVector::new(-2.0 * v.c * v.b, 2.0 * v.c * v.a, 0.0);
                assert!((d - rhs).norm() < 1e-6);
            }
        }
    }
}
