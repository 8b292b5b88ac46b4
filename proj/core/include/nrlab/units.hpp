#pragma once
#include <stdexcept>

namespace nrlab {

// Gaussian-unit constants carried through every formula. Defaults are natural
// units; the dilation transform produces sources with a rescaled mass.
struct Units {
  double hbar = 1.0;
  double c = 1.0;
  double m = 1.0;
  double q = 1.0;

  void validate() const {
    if (!(hbar > 0.0 && c > 0.0 && m > 0.0 && q > 0.0))
      throw std::invalid_argument("Units: hbar, c, m, q must all be positive");
  }
  bool operator==(const Units &o) const = default;
};

}  // namespace nrlab
