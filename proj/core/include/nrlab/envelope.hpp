#pragma once

namespace nrlab {

// Radial bump profile b(u) = exp(-(1-u^2)^-s) for |u| < 1, identically zero
// outside. Infinitely differentiable with compact support; all derivatives
// vanish at u = 1.
struct BumpEnvelope {
  double smoothness = 2.0;  // the exponent s

  double value(double u) const;
  double d1(double u) const;  // db/du
  double d2(double u) const;  // d^2 b/du^2
};

}  // namespace nrlab
