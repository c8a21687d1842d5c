//! C ABI for `heis`.
//!
//! Functions that can fail return a [`HeisStatus`] and write their result
//! through an out-pointer. Meshes and candidate lists are opaque handles
//! owned by the caller and released with the matching `_free` function.
//! No function unwinds across the boundary: panics become
//! `HEIS_STATUS_PANIC`.

use std::ffi::c_char;
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use heis::error::HeisError;
use heis::group::HeisPoint as Point;
use heis::mesh::{sphere_exp_mesh, SphereGrid, TriMesh};
use heis::{FrameIndex, FrameVector, GeodesicSpec, ShootingSolution};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeisStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BufferTooSmall = 3,
    IndexOutOfRange = 4,
    NoConvergence = 5,
    NoSingularity = 6,
    NumericalFailure = 7,
    Panic = 8,
}

/// A point `(x, y, z)` of the group.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Tangent vector `a X + b Y + c T` in the left-invariant frame.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisFrameVector {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// A geodesic from the identity to a shooting target.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisCandidate {
    pub gamma: f64,
    pub phi: f64,
    pub s: f64,
    pub residual: f64,
    /// The target is on the z-axis and every azimuth works.
    pub azimuth_free: bool,
}

/// Opaque triangle mesh.
pub struct HeisMesh {
    inner: TriMesh,
}

/// Opaque list of shooting candidates, sorted by arc length.
pub struct HeisCandidates {
    inner: Vec<ShootingSolution>,
}

impl From<HeisPoint> for Point {
    fn from(p: HeisPoint) -> Self {
        Point::new(p.x, p.y, p.z)
    }
}

impl From<Point> for HeisPoint {
    fn from(p: Point) -> Self {
        HeisPoint { x: p.x, y: p.y, z: p.z }
    }
}

impl From<&HeisError> for HeisStatus {
    fn from(e: &HeisError) -> Self {
        match e {
            HeisError::FrameIndexOutOfRange(_) => HeisStatus::IndexOutOfRange,
            HeisError::DegeneratePlane | HeisError::InvalidParameter(_) => HeisStatus::InvalidArgument,
            HeisError::NoConvergence { .. } | HeisError::Unreachable { .. } => HeisStatus::NoConvergence,
            HeisError::NoSingularity { .. } => HeisStatus::NoSingularity,
            HeisError::NonFiniteState { .. } => HeisStatus::NumericalFailure,
        }
    }
}

fn guard(f: impl FnOnce() -> HeisStatus + UnwindSafe) -> HeisStatus {
    catch_unwind(f).unwrap_or(HeisStatus::Panic)
}

/// Writes `value` through `out` or reports the error.
///
/// # Safety
/// `out` must be null or valid for writes.
unsafe fn put<T>(out: *mut T, value: Result<T, HeisError>) -> HeisStatus {
    if out.is_null() {
        return HeisStatus::NullPointer;
    }
    match value {
        Ok(v) => {
            out.write(v);
            HeisStatus::Ok
        }
        Err(e) => HeisStatus::from(&e),
    }
}

/// Static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn heis_status_message(status: HeisStatus) -> *const c_char {
    let msg: &'static [u8] = match status {
        HeisStatus::Ok => b"ok\0",
        HeisStatus::NullPointer => b"null pointer argument\0",
        HeisStatus::InvalidArgument => b"invalid argument\0",
        HeisStatus::BufferTooSmall => b"output buffer too small\0",
        HeisStatus::IndexOutOfRange => b"index out of range\0",
        HeisStatus::NoConvergence => b"solver did not converge\0",
        HeisStatus::NoSingularity => b"no singular point found\0",
        HeisStatus::NumericalFailure => b"non-finite intermediate value\0",
        HeisStatus::Panic => b"internal error\0",
    };
    msg.as_ptr().cast()
}

#[no_mangle]
pub extern "C" fn heis_mul(a: HeisPoint, b: HeisPoint) -> HeisPoint {
    (Point::from(a) * Point::from(b)).into()
}

#[no_mangle]
pub extern "C" fn heis_inverse(p: HeisPoint) -> HeisPoint {
    Point::from(p).inverse().into()
}

/// `a b a⁻¹ b⁻¹`.
#[no_mangle]
pub extern "C" fn heis_commutator(a: HeisPoint, b: HeisPoint) -> HeisPoint {
    Point::from(a).commutator(&Point::from(b)).into()
}

/// Metric tensor at `p` in coordinates, row-major into `out[9]`.
///
/// # Safety
/// `out` must be null or point to 9 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn heis_metric_at(p: HeisPoint, out: *mut f64) -> HeisStatus {
    if out.is_null() {
        return HeisStatus::NullPointer;
    }
    let g = heis::metric_at(&p.into()).entries;
    let flat: Vec<f64> = g.iter().flatten().copied().collect();
    ptr::copy_nonoverlapping(flat.as_ptr(), out, 9);
    HeisStatus::Ok
}

/// Point at arc length `s` on the unit geodesic from `base` with vertical
/// component `gamma` and azimuth `phi`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn heis_geodesic_from_point(
    base: HeisPoint,
    gamma: f64,
    phi: f64,
    s: f64,
    out: *mut HeisPoint,
) -> HeisStatus {
    guard(move || {
        let value = GeodesicSpec::from_base(base.into(), gamma, phi).and_then(|spec| {
            if s.is_finite() {
                Ok(heis::geodesic_from_point(&spec, s).into())
            } else {
                Err(HeisError::InvalidParameter(format!("non-finite arc length {s}")))
            }
        });
        put(out, value)
    })
}

/// `exp_base(v)`: the geodesic from `base` with initial velocity `v`,
/// followed for arc length `|v|`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn heis_exp_map(base: HeisPoint, v: HeisFrameVector, out: *mut HeisPoint) -> HeisStatus {
    guard(move || {
        let v = FrameVector::new(v.a, v.b, v.c);
        let p: Point = base.into();
        let value = if v.is_finite() && p.is_finite() {
            Ok(heis::exp_map(&p, &v).into())
        } else {
            Err(HeisError::InvalidParameter("non-finite input".into()))
        };
        put(out, value)
    })
}

/// Riemannian distance from `p` to `q`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn heis_riemannian_distance(p: HeisPoint, q: HeisPoint, out: *mut f64) -> HeisStatus {
    guard(move || {
        let (p, q): (Point, Point) = (p.into(), q.into());
        if !p.is_finite() || !q.is_finite() {
            return put(out, Err(HeisError::InvalidParameter("non-finite point".into())));
        }
        put(out, heis::riemannian_distance(&p, &q))
    })
}

#[no_mangle]
pub extern "C" fn heis_cygan_distance(p: HeisPoint, q: HeisPoint) -> f64 {
    heis::cygan_distance(&p.into(), &q.into())
}

/// Sectional curvature of the plane spanned by frame fields `i` and `j`,
/// numbered 1 = X, 2 = Y, 3 = T.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn heis_sectional_curvature(i: u32, j: u32, out: *mut f64) -> HeisStatus {
    let value = FrameIndex::from_one_based(i as usize)
        .and_then(|i| Ok((i, FrameIndex::from_one_based(j as usize)?)))
        .and_then(|(i, j)| heis::sectional_curvature(i, j));
    put(out, value)
}

/// Builds the exp-sphere of `radius` on an `n_phi × n_gamma` grid. On success
/// `*out` owns a new mesh to be released with [`heis_mesh_free`].
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn heis_sphere_mesh_new(
    radius: f64,
    n_phi: usize,
    n_gamma: usize,
    out: *mut *mut HeisMesh,
) -> HeisStatus {
    guard(move || {
        let mesh = SphereGrid::new(n_phi, n_gamma, radius).and_then(|g| sphere_exp_mesh(&g));
        put(out, mesh.map(|inner| Box::into_raw(Box::new(HeisMesh { inner }))))
    })
}

/// # Safety
/// `mesh` must be null or a live handle from [`heis_sphere_mesh_new`].
#[no_mangle]
pub unsafe extern "C" fn heis_mesh_vertex_count(mesh: *const HeisMesh) -> usize {
    mesh.as_ref().map_or(0, |m| m.inner.vertices.len())
}

/// # Safety
/// `mesh` must be null or a live handle from [`heis_sphere_mesh_new`].
#[no_mangle]
pub unsafe extern "C" fn heis_mesh_face_count(mesh: *const HeisMesh) -> usize {
    mesh.as_ref().map_or(0, |m| m.inner.faces.len())
}

/// Copies `3 × vertex_count` coordinates, vertex by vertex, into `out`.
///
/// # Safety
/// `mesh` must be null or a live handle; `out` must be null or point to
/// `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn heis_mesh_copy_vertices(mesh: *const HeisMesh, out: *mut f64, len: usize) -> HeisStatus {
    let Some(m) = mesh.as_ref() else {
        return HeisStatus::NullPointer;
    };
    if out.is_null() {
        return HeisStatus::NullPointer;
    }
    let n = 3 * m.inner.vertices.len();
    if len < n {
        return HeisStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(m.inner.vertices.as_ptr().cast::<f64>(), out, n);
    HeisStatus::Ok
}

/// Copies `3 × face_count` zero-based vertex indices into `out`.
///
/// # Safety
/// `mesh` must be null or a live handle; `out` must be null or point to
/// `len` writable `uint32_t`.
#[no_mangle]
pub unsafe extern "C" fn heis_mesh_copy_faces(mesh: *const HeisMesh, out: *mut u32, len: usize) -> HeisStatus {
    let Some(m) = mesh.as_ref() else {
        return HeisStatus::NullPointer;
    };
    if out.is_null() {
        return HeisStatus::NullPointer;
    }
    let n = 3 * m.inner.faces.len();
    if len < n {
        return HeisStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(m.inner.faces.as_ptr().cast::<u32>(), out, n);
    HeisStatus::Ok
}

/// Releases a mesh. Null is ignored.
///
/// # Safety
/// `mesh` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn heis_mesh_free(mesh: *mut HeisMesh) {
    if !mesh.is_null() {
        drop(Box::from_raw(mesh));
    }
}

/// Every geodesic from the identity to `target` found by multistart
/// shooting, with endpoint residual below `tol`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn heis_shoot_candidates(
    target: HeisPoint,
    tol: f64,
    out: *mut *mut HeisCandidates,
) -> HeisStatus {
    guard(move || {
        let t: Point = target.into();
        let value = if t.is_finite() {
            heis::shoot_candidates(&t, tol)
        } else {
            Err(HeisError::InvalidParameter("non-finite target".into()))
        };
        put(out, value.map(|inner| Box::into_raw(Box::new(HeisCandidates { inner }))))
    })
}

/// # Safety
/// `list` must be null or a live handle from [`heis_shoot_candidates`].
#[no_mangle]
pub unsafe extern "C" fn heis_candidates_count(list: *const HeisCandidates) -> usize {
    list.as_ref().map_or(0, |l| l.inner.len())
}

/// # Safety
/// `list` must be null or a live handle; `out` must be null or valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn heis_candidates_get(
    list: *const HeisCandidates,
    index: usize,
    out: *mut HeisCandidate,
) -> HeisStatus {
    let Some(l) = list.as_ref() else {
        return HeisStatus::NullPointer;
    };
    let Some(c) = l.inner.get(index) else {
        return HeisStatus::IndexOutOfRange;
    };
    put(
        out,
        Ok(HeisCandidate {
            gamma: c.spec.gamma(),
            phi: c.spec.phi(),
            s: c.s,
            residual: c.residual,
            azimuth_free: c.azimuth_free,
        }),
    )
}

/// Releases a candidate list. Null is ignored.
///
/// # Safety
/// `list` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn heis_candidates_free(list: *mut HeisCandidates) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}
