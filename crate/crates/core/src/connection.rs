//! Levi-Civita connection and curvature in the frame `{X, Y, T}`.
//!
//! The covariant derivatives `∇_{E_i} E_j` of the frame fields are
//!
//! ```text
//!        X    Y    T
//!   X  [ 0    T   −Y ]
//!   Y  [−T    0    X ]
//!   T  [−Y    X    0 ]
//! ```
//!
//! All frame coefficients are constant, so everything here is a function of
//! frame indices only. Curvature follows the convention
//! `R(U, V)W = ∇_U∇_V W − ∇_V∇_U W − ∇_{[U,V]}W` and sectional curvature is
//! `K(U, V) = ⟨R(U, V)V, U⟩` for an orthonormal pair.

use std::fmt;

use crate::error::{HeisError, Result};
use crate::group::HeisPoint;
use crate::metric::{coord_to_frame, frame_at, FrameVector, Mat3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FrameIndex {
    X,
    Y,
    T,
}

impl FrameIndex {
    pub const ALL: [FrameIndex; 3] = [FrameIndex::X, FrameIndex::Y, FrameIndex::T];

    /// `1 → X`, `2 → Y`, `3 → T`.
    pub fn from_one_based(i: usize) -> Result<Self> {
        match i {
            1 => Ok(Self::X),
            2 => Ok(Self::Y),
            3 => Ok(Self::T),
            other => Err(HeisError::FrameIndexOutOfRange(other)),
        }
    }

    pub fn slot(self) -> usize {
        self as usize
    }

    /// The frame field itself as a frame vector.
    pub fn unit(self) -> FrameVector {
        let mut e = [0.0; 3];
        e[self.slot()] = 1.0;
        FrameVector::from(e)
    }
}

impl fmt::Display for FrameIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::X => "X",
            Self::Y => "Y",
            Self::T => "T",
        };
        f.write_str(s)
    }
}

/// Table of `∇_{E_i} E_j`, row `i`, column `j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionTable {
    pub table: [[FrameVector; 3]; 3],
}

impl ConnectionTable {
    pub fn levi_civita() -> Self {
        let z = FrameVector::ZERO;
        let x = FrameIndex::X.unit();
        let y = FrameIndex::Y.unit();
        let t = FrameIndex::T.unit();
        Self {
            table: [[z, t, -y], [-t, z, x], [-y, x, z]],
        }
    }

    pub fn get(&self, i: FrameIndex, j: FrameIndex) -> FrameVector {
        self.table[i.slot()][j.slot()]
    }

    /// `∇_U W` for constant-coefficient fields `U`, `W`.
    pub fn covariant(&self, u: &FrameVector, w: &FrameVector) -> FrameVector {
        let (u, w) = (u.to_array(), w.to_array());
        let mut out = FrameVector::ZERO;
        for (m, um) in u.iter().enumerate() {
            for (n, wn) in w.iter().enumerate() {
                out = out + (um * wn) * self.table[m][n];
            }
        }
        out
    }
}

pub fn nabla(i: FrameIndex, j: FrameIndex) -> FrameVector {
    ConnectionTable::levi_civita().get(i, j)
}

/// Coordinates of a frame field at `p` together with its coordinate Jacobian
/// `J[k][l] = ∂_l V^k`. X and Y are affine in `(x, y)`, T is constant.
fn frame_field_jet(i: FrameIndex, p: &HeisPoint) -> ([f64; 3], Mat3) {
    let coords = frame_at(p)[i.slot()].to_array();
    let mut jac = [[0.0; 3]; 3];
    match i {
        // X^z = −y
        FrameIndex::X => jac[2][1] = -1.0,
        // Y^z = x
        FrameIndex::Y => jac[2][0] = 1.0,
        FrameIndex::T => {}
    }
    (coords, jac)
}

/// Lie bracket `[E_i, E_j]` evaluated at `p` from the coordinate expressions
/// of the fields, `[V, W]^k = V^l ∂_l W^k − W^l ∂_l V^k`, and expressed back
/// in the frame.
pub fn frame_bracket_at(p: &HeisPoint, i: FrameIndex, j: FrameIndex) -> FrameVector {
    let (v, jv) = frame_field_jet(i, p);
    let (w, jw) = frame_field_jet(j, p);
    let mut out = [0.0; 3];
    for (k, o) in out.iter_mut().enumerate() {
        for l in 0..3 {
            *o += v[l] * jw[k][l] - w[l] * jv[k][l];
        }
    }
    coord_to_frame(p, &out.into())
}

/// `[E_i, E_j]`; the result does not depend on the point.
pub fn frame_bracket(i: FrameIndex, j: FrameIndex) -> FrameVector {
    frame_bracket_at(&HeisPoint::IDENTITY, i, j)
}

/// `R(E_i, E_j)E_k`.
pub fn curvature_frame(i: FrameIndex, j: FrameIndex, k: FrameIndex) -> FrameVector {
    let conn = ConnectionTable::levi_civita();
    let (ei, ej) = (i.unit(), j.unit());
    let nj_k = conn.get(j, k);
    let ni_k = conn.get(i, k);
    let bracket = frame_bracket(i, j);
    conn.covariant(&ei, &nj_k) - conn.covariant(&ej, &ni_k) - conn.covariant(&bracket, &k.unit())
}

/// Sectional curvature of the plane spanned by two distinct frame fields.
pub fn sectional_curvature(i: FrameIndex, j: FrameIndex) -> Result<f64> {
    if i == j {
        return Err(HeisError::DegeneratePlane);
    }
    Ok(curvature_frame(i, j, j).dot(&i.unit()))
}
