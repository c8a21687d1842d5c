#ifndef HEIS_H
#define HEIS_H

#include <stddef.h>
#include <stdint.h>
#include <stdbool.h>

typedef enum HeisStatus {
  HEIS_STATUS_OK = 0,
  HEIS_STATUS_NULL_POINTER = 1,
  HEIS_STATUS_INVALID_ARGUMENT = 2,
  HEIS_STATUS_BUFFER_TOO_SMALL = 3,
  HEIS_STATUS_INDEX_OUT_OF_RANGE = 4,
  HEIS_STATUS_NO_CONVERGENCE = 5,
  HEIS_STATUS_NO_SINGULARITY = 6,
  HEIS_STATUS_NUMERICAL_FAILURE = 7,
  HEIS_STATUS_PANIC = 8,
} HeisStatus;

// Opaque list of shooting candidates, sorted by arc length.
typedef struct HeisCandidates HeisCandidates;

// Opaque triangle mesh.
typedef struct HeisMesh HeisMesh;

// A point `(x, y, z)` of the group.
typedef struct HeisPoint {
  double x;
  double y;
  double z;
} HeisPoint;

// Tangent vector `a X + b Y + c T` in the left-invariant frame.
typedef struct HeisFrameVector {
  double a;
  double b;
  double c;
} HeisFrameVector;

// A geodesic from the identity to a shooting target.
typedef struct HeisCandidate {
  double gamma;
  double phi;
  double s;
  double residual;
  // The target is on the z-axis and every azimuth works.
  bool azimuth_free;
} HeisCandidate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static, NUL-terminated description of a status code.
const char *heis_status_message(enum HeisStatus status);

struct HeisPoint heis_mul(struct HeisPoint a, struct HeisPoint b);

struct HeisPoint heis_inverse(struct HeisPoint p);

// `a b a⁻¹ b⁻¹`.
struct HeisPoint heis_commutator(struct HeisPoint a, struct HeisPoint b);

// Metric tensor at `p` in coordinates, row-major into `out[9]`.
//
// # Safety
// `out` must be null or point to 9 writable doubles.
enum HeisStatus heis_metric_at(struct HeisPoint p, double *out);

// Point at arc length `s` on the unit geodesic from `base` with vertical
// component `gamma` and azimuth `phi`.
//
// # Safety
// `out` must be null or valid for writes.
enum HeisStatus heis_geodesic_from_point(struct HeisPoint base,
                                         double gamma,
                                         double phi,
                                         double s,
                                         struct HeisPoint *out);

// `exp_base(v)`: the geodesic from `base` with initial velocity `v`,
// followed for arc length `|v|`.
//
// # Safety
// `out` must be null or valid for writes.
enum HeisStatus heis_exp_map(struct HeisPoint base,
                             struct HeisFrameVector v,
                             struct HeisPoint *out);

// Riemannian distance from `p` to `q`.
//
// # Safety
// `out` must be null or valid for writes.
enum HeisStatus heis_riemannian_distance(struct HeisPoint p, struct HeisPoint q, double *out);

double heis_cygan_distance(struct HeisPoint p, struct HeisPoint q);

// Sectional curvature of the plane spanned by frame fields `i` and `j`,
// numbered 1 = X, 2 = Y, 3 = T.
//
// # Safety
// `out` must be null or valid for writes.
enum HeisStatus heis_sectional_curvature(uint32_t i, uint32_t j, double *out);

// Builds the exp-sphere of `radius` on an `n_phi × n_gamma` grid. On success
// `*out` owns a new mesh to be released with [`heis_mesh_free`].
//
// # Safety
// `out` must be null or valid for writes.
enum HeisStatus heis_sphere_mesh_new(double radius,
                                     size_t n_phi,
                                     size_t n_gamma,
                                     struct HeisMesh **out);

// # Safety
// `mesh` must be null or a live handle from [`heis_sphere_mesh_new`].
size_t heis_mesh_vertex_count(const struct HeisMesh *mesh);

// # Safety
// `mesh` must be null or a live handle from [`heis_sphere_mesh_new`].
size_t heis_mesh_face_count(const struct HeisMesh *mesh);

// Copies `3 × vertex_count` coordinates, vertex by vertex, into `out`.
//
// # Safety
// `mesh` must be null or a live handle; `out` must be null or point to
// `len` writable doubles.
enum HeisStatus heis_mesh_copy_vertices(const struct HeisMesh *mesh, double *out, size_t len);

// Copies `3 × face_count` zero-based vertex indices into `out`.
//
// # Safety
// `mesh` must be null or a live handle; `out` must be null or point to
// `len` writable `uint32_t`.
enum HeisStatus heis_mesh_copy_faces(const struct HeisMesh *mesh, uint32_t *out, size_t len);

// Releases a mesh. Null is ignored.
//
// # Safety
// `mesh` must be null or a handle not yet freed.
void heis_mesh_free(struct HeisMesh *mesh);

// Every geodesic from the identity to `target` found by multistart
// shooting, with endpoint residual below `tol`.
//
// # Safety
// `out` must be null or valid for writes.
enum HeisStatus heis_shoot_candidates(struct HeisPoint target,
                                      double tol,
                                      struct HeisCandidates **out);

// # Safety
// `list` must be null or a live handle from [`heis_shoot_candidates`].
size_t heis_candidates_count(const struct HeisCandidates *list);

// # Safety
// `list` must be null or a live handle; `out` must be null or valid for
// writes.
enum HeisStatus heis_candidates_get(const struct HeisCandidates *list,
                                    size_t index,
                                    struct HeisCandidate *out);

// Releases a candidate list. Null is ignored.
//
// # Safety
// `list` must be null or a handle not yet freed.
void heis_candidates_free(struct HeisCandidates *list);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HEIS_H */
