#pragma once
#include <array>

#include "nrlab/momentum_grid.hpp"

namespace nrlab {

struct WaveEval {
  cplx value;
  std::array<cplx, 3> gradient;
};

// Pointwise spectral evaluation of the position-space wave function
//   psi(x,t) = (2 pi hbar)^-3 sum_k w_k psi~(p_k) exp(i(p_k.x - s E_k t)/hbar)
// gradient components insert i p_k / hbar. Exact in t (no stepping); the only
// error is the momentum quadrature. Reduction is compensated, node order.
WaveEval evaluate(const AmplitudeBase &amplitude, const Dispersion &dispersion,
                  const MomentumGrid &grid, const Vec3 &x, double t);

// k-th time derivative: inserts (-i s E_p/hbar)^k. order >= 0.
cplx time_derivative(const AmplitudeBase &amplitude, const Dispersion &dispersion,
                     const MomentumGrid &grid, const Vec3 &x, double t, int order);

// int |psi~|^2 d3p / (2 pi hbar)^3 by grid quadrature.
double norm(const AmplitudeBase &amplitude, const MomentumGrid &grid);

// Channel flags for mode-level point evaluation.
enum ModeChannels : unsigned {
  kValue = 1u,
  kGrad = 2u,
  kDt = 4u,
  kDtGrad = 8u,
  kDt2 = 16u,
  kLaplacian = 32u,
};

struct ModePointEval {
  cplx value{};
  std::array<cplx, 3> grad{};
  cplx dt{};
  std::array<cplx, 3> dtgrad{};
  cplx dt2{};
  cplx laplacian{};
};

// Direct (compensated, node-order) evaluation of one scalar mode with the
// requested channels. Slow but exact up to quadrature: the reference
// implementation every fast engine is checked against.
ModePointEval eval_mode_point(const MomentumGrid &grid, const ScalarMode &mode, const Vec3 &x,
                              double t, unsigned channels);

}  // namespace nrlab
