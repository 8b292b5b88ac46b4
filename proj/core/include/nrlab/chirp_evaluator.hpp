#pragma once
#include <memory>

#include "nrlab/momentum_grid.hpp"
#include "nrlab/wavepacket.hpp"

namespace nrlab {

// Exact closed-form reduction of the Schrodinger packet to a one-dimensional
// radial integral. Completing the square in the quadratic dispersion gives
//   psi(x,t) = scale e^{i Phi0/hbar} W(|z|, t),   z = x - x_offset - v0 t,
//   W = (4 pi/(2 pi hbar)^3) int_0^r b(q) q^2 e^{-i q^2 t/(2 m hbar)}
//        j0(q|z|/hbar) dq,
// so evaluation cost is independent of how far the packet has spread. This is
// the evaluator behind the deep-history part of the advanced/retarded
// comparison, and an independent cross-check of the tensor engines.
class ChirpEvaluator {
 public:
  ChirpEvaluator(std::shared_ptr<const MomentumAmplitude> amplitude,
                 const Dispersion &dispersion);

  ModePointEval eval(const Vec3 &x, double t, unsigned channels) const;

 private:
  std::shared_ptr<const MomentumAmplitude> amp_;
  Dispersion disp_;
};

}  // namespace nrlab
