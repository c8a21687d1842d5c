//! Group structure of `Heis³ = ℂ × ℝ`.
//!
//! A point `(z, t)` with `z = x + iy` is stored as `(x, y, z)`; the centre
//! coordinate is called `z` here so it never collides with a curve parameter.
//!
//! The product is `(z, t)(z', t') = (z + z', t + t' + Im⟨z, z'⟩)`. With the
//! Hermitian product conjugate-linear in the first slot, `⟨z, z'⟩ = z̄ z'` and
//!
//! ```text
//! Im⟨z, z'⟩ = Im((x − iy)(x' + iy')) = x y' − y x'.
//! ```
//!
//! This is forced by the translation formulas `(x,y,z)·(s,0,0) = (x+s, y, z−sy)`
//! and `(x,y,z)·(0,s,0) = (x, y+s, z+sx)`, and it gives the commutator
//! `[(1,0,0), (0,1,0)] = (0,0,2)`. The opposite convention flips both.

use std::ops::Mul;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct HeisPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl HeisPoint {
    pub const IDENTITY: HeisPoint = HeisPoint {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Group inverse `(−x, −y, −z)`.
    pub fn inverse(&self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }

    /// `self · other · self⁻¹ · other⁻¹`.
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other * self.inverse() * other.inverse()
    }

    /// Anisotropic dilation `(λx, λy, λ²z)`, a group automorphism.
    pub fn dilate(&self, lambda: f64) -> Self {
        Self::new(lambda * self.x, lambda * self.y, lambda * lambda * self.z)
    }

    /// Differential of left translation by `self`, applied to a coordinate
    /// vector. The Jacobian of `q ↦ self · q` is the constant matrix
    /// `[[1,0,0],[0,1,0],[−y, x, 1]]`.
    pub fn translate_vector(&self, v: [f64; 3]) -> [f64; 3] {
        [v[0], v[1], v[2] - self.y * v[0] + self.x * v[1]]
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn euclidean_distance(&self, other: &Self) -> f64 {
        let (dx, dy, dz) = (self.x - other.x, self.y - other.y, self.z - other.z);
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

impl From<[f64; 3]> for HeisPoint {
    fn from(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }
}

impl Mul for HeisPoint {
    type Output = HeisPoint;

    fn mul(self, q: HeisPoint) -> HeisPoint {
        HeisPoint::new(
            self.x + q.x,
            self.y + q.y,
            self.z + q.z + self.x * q.y - self.y * q.x,
        )
    }
}
