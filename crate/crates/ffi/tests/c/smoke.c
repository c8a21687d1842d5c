#include <math.h>
#include <stdio.h>
#include <stdlib.h>

#include "heis.h"

#define CHECK(cond)                                                  \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
      return 1;                                                      \
    }                                                                \
  } while (0)

int main(void) {
  HeisPoint e1 = {1.0, 0.0, 0.0}, e2 = {0.0, 1.0, 0.0}, o = {0.0, 0.0, 0.0};
  HeisPoint c = heis_commutator(e1, e2);
  CHECK(c.x == 0.0 && c.y == 0.0 && c.z == 2.0);

  double d = 0.0;
  CHECK(heis_riemannian_distance(o, e1, &d) == HEIS_STATUS_OK);
  CHECK(fabs(d - 1.0) < 1e-9);

  HeisMesh *mesh = NULL;
  CHECK(heis_sphere_mesh_new(1.0, 16, 9, &mesh) == HEIS_STATUS_OK);
  size_t nv = heis_mesh_vertex_count(mesh);
  double *v = malloc(3 * nv * sizeof *v);
  CHECK(heis_mesh_copy_vertices(mesh, v, 3 * nv) == HEIS_STATUS_OK);
  CHECK(v[2] == -1.0);
  free(v);
  heis_mesh_free(mesh);

  CHECK(heis_sectional_curvature(0, 1, &d) == HEIS_STATUS_INDEX_OUT_OF_RANGE);
  printf("%s\n", heis_status_message(HEIS_STATUS_OK));
  return 0;
}
