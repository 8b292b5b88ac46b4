#pragma once
#include <vector>

#include "nrlab/currents.hpp"

namespace nrlab {

// Periodic cube for the split-step evolution; psi stored (ix*n + iy)*n + iz,
// node ix -> origin + (-L/2 + (ix + 0.5) h), h = L/n.
struct NonlinearGrid {
  std::size_t n = 0;
  double length = 0.0;
  Vec3 origin{};
  Units units;
  double time = 0.0;
  std::vector<cplx> psi;

  double spacing() const { return length / static_cast<double>(n); }
  Vec3 node(std::size_t ix, std::size_t iy, std::size_t iz) const {
    const double h = spacing();
    return origin + Vec3{-0.5 * length + (ix + 0.5) * h, -0.5 * length + (iy + 0.5) * h,
                         -0.5 * length + (iz + 0.5) * h};
  }
};

// Samples psi(x, 0) of a schrodinger WaveSource on the cube (tensor engine).
NonlinearGrid sample_initial(const WaveSource &source, std::size_t n, double length,
                             const Vec3 &origin);

struct NonlinearResult {
  NonlinearGrid state;              // final state
  std::vector<double> times;        // t after each step (times[0] = t0)
  std::vector<double> norms;        // int |psi|^2 per recorded time
  std::vector<std::vector<Vec3>> moments;  // [time][j-1] spatial moments of J
};

// Strang split-step for i hbar psi_t = -(hbar^2/2m) lap psi + g |psi|^2 psi.
// Guards: dt * max kinetic frequency < 0.5; face amplitude below
// leak_tol * peak at every recorded step. Moments are current moments
// weighted by (n_hat.x)^(j-1), evaluated spectrally on the grid.
NonlinearResult nonlinear_evolve(NonlinearGrid initial, double coupling, double dt, int steps,
                                 const Vec3 &n_hat, int j_max, double leak_tol = 1e-10);

// Spatial moments of the grid current at the current state.
std::vector<Vec3> grid_current_moments(const NonlinearGrid &grid, const Vec3 &n_hat, int j_max);

}  // namespace nrlab
