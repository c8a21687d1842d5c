use thiserror::Error;

pub type Result<T> = std::result::Result<T, HeisError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeisError {
    /// A frame index outside `1..=3`.
    #[error("frame index {0} out of range (expected 1, 2 or 3)")]
    FrameIndexOutOfRange(usize),

    #[error("sectional curvature needs two distinct frame directions")]
    DegeneratePlane,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("integrator produced a non-finite state at s = {s}")]
    NonFiniteState { s: f64 },

    #[error("shooting found no geodesic to ({x}, {y}, {z}) with residual below {tol:e}")]
    NoConvergence { x: f64, y: f64, z: f64, tol: f64 },

    #[error("target not reachable with arc length up to {s_max}")]
    Unreachable { s_max: f64 },

    #[error("no singular point on the exp-sphere of radius {radius}")]
    NoSingularity { radius: f64 },
}

pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(HeisError::InvalidParameter(msg()))
    }
}
