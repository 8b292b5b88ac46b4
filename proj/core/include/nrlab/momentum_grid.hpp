#pragma once
#include <complex>
#include <memory>
#include <vector>

#include "nrlab/amplitude.hpp"
#include "nrlab/dispersion.hpp"
#include "nrlab/quadrature.hpp"

namespace nrlab {

// Gauss-Legendre momentum grid covering the union of the mode supports. The
// flattened caches follow the fixed grid order (x-major, z-fastest).
class MomentumGrid {
 public:
  MomentumGrid(const QuadratureGrid3D &grid, const Units &units);

  const QuadratureGrid3D &grid() const { return grid_; }
  const Units &units() const { return units_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<Vec3> &nodes() const { return nodes_; }
  const std::vector<double> &weights() const { return weights_; }

 private:
  QuadratureGrid3D grid_;
  Units units_;
  std::vector<Vec3> nodes_;
  std::vector<double> weights_;
};

// One scalar wave-function branch: amplitude samples on the shared momentum
// grid evolving with a single dispersion sign. Wave-function components are
// sums of these (kg_mixed has two, a Dirac component up to two).
struct ScalarMode {
  Dispersion dispersion;
  std::vector<cplx> amplitude;  // psi~(p_k, 0) at grid nodes
  // Set when the mode is a plain bump-family packet (moment oracle, halo
  // evaluator, leakage estimates). Null for spinor-projected channels.
  std::shared_ptr<const MomentumAmplitude> bump;

  // Precomputed per-node energies (slow part) for the evaluators.
  std::vector<double> slow_energy;  // E_slow(p_k)
  double rest_energy = 0.0;
  int sign = +1;
};

// Fills slow_energy/rest_energy/sign caches from the dispersion.
void finalize_mode(ScalarMode &mode, const MomentumGrid &grid);

// Builds a momentum grid that covers `box` with n nodes per axis chosen to
// resolve plane-wave factors exp(i p.x / hbar) for |x| up to x_reach, with
// `base` nodes reserved for the envelope itself.
QuadratureGrid3D momentum_grid_for(const Box3 &box, const Units &units, double x_reach,
                                   int base = 16);

}  // namespace nrlab
