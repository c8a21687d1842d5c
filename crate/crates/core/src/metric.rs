//! Left-invariant frame and the metric it defines.
//!
//! Translating the coordinate directions from the identity gives the frame
//!
//! ```text
//! X = (1, 0, −y),   Y = (0, 1, x),   T = (0, 0, 1)
//! ```
//!
//! which is declared orthonormal. Inverting, `∂x = X + yT`, `∂y = Y − xT`,
//! `∂z = T`, so the metric tensor in coordinates is
//!
//! ```text
//!     ⎡ 1 + y²   −xy    y ⎤
//! g = ⎢  −xy    1 + x²  −x ⎥ ,   det g = 1.
//!     ⎣   y      −x     1 ⎦
//! ```

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::group::HeisPoint;

pub type Mat3 = [[f64; 3]; 3];

/// Tangent vector `aX + bY + cT` in the left-invariant frame.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FrameVector {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Tangent vector `u∂x + v∂y + w∂z` in the coordinate basis.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CoordVector {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl FrameVector {
    pub const ZERO: FrameVector = FrameVector::new(0.0, 0.0, 0.0);

    pub const fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    pub fn dot(&self, o: &Self) -> f64 {
        self.a * o.a + self.b * o.b + self.c * o.c
    }

    /// Length under the metric; the frame is orthonormal so this is Euclidean.
    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite()
    }
}

impl CoordVector {
    pub const fn new(u: f64, v: f64, w: f64) -> Self {
        Self { u, v, w }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.u, self.v, self.w]
    }
}

impl From<[f64; 3]> for FrameVector {
    fn from(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }
}

impl From<[f64; 3]> for CoordVector {
    fn from(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }
}

impl Add for FrameVector {
    type Output = FrameVector;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b, self.c + o.c)
    }
}

impl Sub for FrameVector {
    type Output = FrameVector;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b, self.c - o.c)
    }
}

impl Neg for FrameVector {
    type Output = FrameVector;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b, -self.c)
    }
}

impl Mul<FrameVector> for f64 {
    type Output = FrameVector;
    fn mul(self, v: FrameVector) -> FrameVector {
        FrameVector::new(self * v.a, self * v.b, self * v.c)
    }
}

/// Coordinate matrix of the metric at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricTensor {
    pub entries: Mat3,
}

impl MetricTensor {
    pub fn determinant(&self) -> f64 {
        det3(&self.entries)
    }

    /// The three leading principal minors, all positive for a metric.
    pub fn leading_minors(&self) -> [f64; 3] {
        let g = &self.entries;
        [g[0][0], g[0][0] * g[1][1] - g[0][1] * g[1][0], det3(g)]
    }

    /// `uᵀ g v`.
    pub fn apply(&self, u: &CoordVector, v: &CoordVector) -> f64 {
        let (u, v) = (u.to_array(), v.to_array());
        let g = &self.entries;
        (0..3)
            .map(|i| (0..3).map(|j| u[i] * g[i][j] * v[j]).sum::<f64>())
            .sum()
    }
}

pub fn det3(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// The frame `[X, Y, T]` at `p`, in coordinates.
pub fn frame_at(p: &HeisPoint) -> [CoordVector; 3] {
    [
        CoordVector::new(1.0, 0.0, -p.y),
        CoordVector::new(0.0, 1.0, p.x),
        CoordVector::new(0.0, 0.0, 1.0),
    ]
}

pub fn metric_at(p: &HeisPoint) -> MetricTensor {
    let (x, y) = (p.x, p.y);
    let xy = -x * y;
    MetricTensor {
        entries: [
            [1.0 + y * y, xy, y],
            [xy, 1.0 + x * x, -x],
            [y, -x, 1.0],
        ],
    }
}

/// `aX + bY + cT ↦ (a, b, c − a·y + b·x)`.
pub fn frame_to_coord(p: &HeisPoint, v: &FrameVector) -> CoordVector {
    CoordVector::new(v.a, v.b, v.c - v.a * p.y + v.b * p.x)
}

/// Inverse of [`frame_to_coord`]: `u∂x + v∂y + w∂z = uX + vY + (w + u·y − v·x)T`.
pub fn coord_to_frame(p: &HeisPoint, v: &CoordVector) -> FrameVector {
    FrameVector::new(v.u, v.v, v.w + v.u * p.y - v.v * p.x)
}

pub fn inner_product(p: &HeisPoint, u: &CoordVector, v: &CoordVector) -> f64 {
    metric_at(p).apply(u, v)
}
