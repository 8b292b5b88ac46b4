#include "nrlab/momentum_grid.hpp"

#include <algorithm>
#include <cmath>

namespace nrlab {

MomentumGrid::MomentumGrid(const QuadratureGrid3D &grid, const Units &units)
    : grid_(grid), units_(units) {
  const std::size_t n = grid_.size();
  nodes_.resize(n);
  weights_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes_[i] = grid_.node(i);
    weights_[i] = grid_.weight(i);
  }
}

void finalize_mode(ScalarMode &mode, const MomentumGrid &grid) {
  const std::size_t n = grid.size();
  mode.slow_energy.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    mode.slow_energy[i] = mode.dispersion.slow_energy(grid.nodes()[i]);
  mode.rest_energy = mode.dispersion.rest_energy();
  mode.sign = mode.dispersion.sign();
}

QuadratureGrid3D momentum_grid_for(const Box3 &box, const Units &units, double x_reach,
                                   int base) {
  int n[3];
  for (int a = 0; a < 3; ++a) {
    const double half_span = 0.5 * (box.hi[a] - box.lo[a]);
    // Gauss-Legendre resolves exp(i w u) on [-1,1] once n > |w|/2 + margin;
    // w = half_span * x_reach / hbar.
    const double w = half_span * x_reach / units.hbar;
    n[a] = std::max(base, static_cast<int>(std::ceil(w / 2.0)) + 10);
  }
  return gauss_legendre_grid_aniso(n[0], n[1], n[2], box);
}

}  // namespace nrlab
