#include "nrlab/envelope.hpp"

#include <cmath>

namespace nrlab {

// g(u) = (1-u^2)^-s, b = exp(-g)
// g'  = 2su (1-u^2)^-(s+1)
// g'' = 2s (1-u^2)^-(s+2) [(1-u^2) + 2(s+1)u^2]
// b'  = -g' b,  b'' = (g'^2 - g'') b

double BumpEnvelope::value(double u) const {
  const double w = 1.0 - u * u;
  if (w <= 0.0) return 0.0;
  return std::exp(-std::pow(w, -smoothness));
}

double BumpEnvelope::d1(double u) const {
  const double w = 1.0 - u * u;
  if (w <= 0.0) return 0.0;
  const double g1 = 2.0 * smoothness * u * std::pow(w, -smoothness - 1.0);
  return -g1 * value(u);
}

double BumpEnvelope::d2(double u) const {
  const double w = 1.0 - u * u;
  if (w <= 0.0) return 0.0;
  const double s = smoothness;
  const double g1 = 2.0 * s * u * std::pow(w, -s - 1.0);
  const double g2 = 2.0 * s * std::pow(w, -s - 2.0) * (w + 2.0 * (s + 1.0) * u * u);
  return (g1 * g1 - g2) * value(u);
}

}  // namespace nrlab
