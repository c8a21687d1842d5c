//! Numerical geometry of the Heisenberg group `Heis³`.
//!
//! Points are triples `(x, y, z)` with the product
//!
//! ```text
//! (x, y, z) · (x', y', z') = (x + x', y + y', z + z' + x y' − y x')
//! ```
//!
//! and the Riemannian metric is the left-invariant one for which the frame
//! `X = ∂x − y ∂z`, `Y = ∂y + x ∂z`, `T = ∂z` is orthonormal.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`] and [`metric`]: group law, frame, metric tensor.
//! * [`connection`]: Levi-Civita connection table, brackets, curvature.
//! * [`geodesic`] and [`integrate`]: closed-form geodesics, exponential map
//!   and an RK4 integrator of the geodesic ODE used for cross-checking.
//! * [`distance`]: Cygan gauge distance, Riemannian distance by geodesic
//!   shooting, and a brute-force grid oracle.
//! * [`mesh`]: exp-spheres, exp-surfaces and singular-point detection.
//! * [`io`] and [`cli`]: file writers and the `heis` command line tool.

pub mod cli;
pub mod connection;
pub mod distance;
pub mod error;
pub mod geodesic;
pub mod group;
pub mod integrate;
pub mod io;
pub mod mesh;
pub mod metric;

pub use connection::{
    curvature_frame, frame_bracket, nabla, sectional_curvature, ConnectionTable, FrameIndex,
};
pub use distance::{
    brute_force_distance, cygan_distance, cygan_scaling_check, riemannian_distance,
    shoot_candidates, BruteForceGrid, ShootingSolution,
};
pub use error::{HeisError, Result};
pub use geodesic::{
    exp_map, geodesic_from_origin, geodesic_from_point, velocity_frame_at, GeodesicSample,
    GeodesicSpec,
};
pub use group::HeisPoint;
pub use integrate::integrate_geodesic;
pub use mesh::{
    ball_cutaway_mesh, geodesic_polyline, plane_exp_surface, singular_point_closeup,
    sphere_exp_mesh, SphereGrid, TriMesh,
};
pub use metric::{coord_to_frame, frame_at, frame_to_coord, inner_product, metric_at};
pub use metric::{CoordVector, FrameVector, MetricTensor};
