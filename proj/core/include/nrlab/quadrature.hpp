#pragma once
#include <cstddef>
#include <vector>

#include "nrlab/vec3.hpp"

namespace nrlab {

// 1D Gauss-Legendre rule on [-1,1]. Deterministic (Newton iteration on the
// Legendre recurrence); nodes ascending.
struct GaussLegendre1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre1D gauss_legendre(int n);

struct Box3 {
  Vec3 lo, hi;
  Vec3 extent() const { return hi - lo; }
  double volume() const {
    const Vec3 e = extent();
    return e.x * e.y * e.z;
  }
  Vec3 center() const { return 0.5 * (lo + hi); }
};

// Tensor-product Gauss-Legendre grid over an axis-aligned box. Node order is
// fixed: index = (ix * ny + iy) * nz + iz, each axis ascending. All weighted
// reductions over grids run in this order with compensated summation.
class QuadratureGrid3D {
 public:
  // Per-axis node arrays (tensor structure is exposed for the fast paths).
  std::array<std::vector<double>, 3> axis_nodes;
  std::array<std::vector<double>, 3> axis_weights;
  Box3 bounds;

  std::size_t size() const {
    return axis_nodes[0].size() * axis_nodes[1].size() * axis_nodes[2].size();
  }
  int n_axis(int a) const { return static_cast<int>(axis_nodes[a].size()); }

  Vec3 node(std::size_t flat) const {
    const std::size_t nz = axis_nodes[2].size(), ny = axis_nodes[1].size();
    const std::size_t iz = flat % nz, iy = (flat / nz) % ny, ix = flat / (nz * ny);
    return {axis_nodes[0][ix], axis_nodes[1][iy], axis_nodes[2][iz]};
  }
  double weight(std::size_t flat) const {
    const std::size_t nz = axis_nodes[2].size(), ny = axis_nodes[1].size();
    const std::size_t iz = flat % nz, iy = (flat / nz) % ny, ix = flat / (nz * ny);
    return axis_weights[0][ix] * axis_weights[1][iy] * axis_weights[2][iz];
  }
};

// n_per_axis >= 1, bounds non-degenerate (lo < hi on every axis).
QuadratureGrid3D gauss_legendre_grid(int n_per_axis, const Box3 &bounds);

// Internal variant with independent per-axis counts (scenario machinery uses
// anisotropic boxes; the public rule above stays cubic).
QuadratureGrid3D gauss_legendre_grid_aniso(int nx, int ny, int nz, const Box3 &bounds);

// Product rule on the unit sphere: Gauss-Legendre in cos(theta) x uniform in
// phi. Exact for polynomials in the direction components up to total degree
// `order`. weights sum to 4*pi.
class SphereQuadrature {
 public:
  std::vector<Vec3> directions;
  std::vector<double> weights;
  int order = 0;

  std::size_t size() const { return directions.size(); }
};

// order in [1, 64].
SphereQuadrature sphere_quadrature(int order);

}  // namespace nrlab
