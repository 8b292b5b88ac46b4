#pragma once
#include "nrlab/units.hpp"
#include "nrlab/vec3.hpp"

namespace nrlab {

enum class DispersionKind {
  schrodinger,      // E = p^2/2m, phase exp(-iEt/hbar)
  kg_plus,          // E = c sqrt(p^2 + m^2 c^2), phase exp(-iEt/hbar)
  kg_minus,         // same E, phase exp(+iEt/hbar)
  canonical_plus,   // relativistic E, upper block
  canonical_minus,  // relativistic E, lower block
};

inline bool is_relativistic(DispersionKind k) { return k != DispersionKind::schrodinger; }
inline int frequency_sign(DispersionKind k) {
  return (k == DispersionKind::kg_minus || k == DispersionKind::canonical_minus) ? -1 : +1;
}

// Free-particle dispersion. The total phase is split as
//   E(p) = rest + slow(p)
// so time evolution can factor the rest-mass rotation out exactly; slow(p)
// stays small over the band limit, which keeps Taylor tables in t short.
struct Dispersion {
  DispersionKind kind = DispersionKind::schrodinger;
  Units units;

  double rest_energy() const {
    return is_relativistic(kind) ? units.m * units.c * units.c : 0.0;
  }
  double energy(const Vec3 &p) const {
    const double p2 = norm2(p);
    if (!is_relativistic(kind)) return p2 / (2.0 * units.m);
    const double mc = units.m * units.c;
    return units.c * std::sqrt(p2 + mc * mc);
  }
  double slow_energy(const Vec3 &p) const {
    const double p2 = norm2(p);
    if (!is_relativistic(kind)) return p2 / (2.0 * units.m);
    const double mc = units.m * units.c;
    // c(sqrt(p^2+m^2c^2) - mc), written to avoid cancellation
    return units.c * p2 / (std::sqrt(p2 + mc * mc) + mc);
  }
  int sign() const { return frequency_sign(kind); }
  Vec3 group_velocity(const Vec3 &p) const {
    if (!is_relativistic(kind)) return p / units.m;
    const double mc = units.m * units.c;
    return p * (units.c / std::sqrt(norm2(p) + mc * mc));
  }
};

}  // namespace nrlab
