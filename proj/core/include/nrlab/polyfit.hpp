#pragma once
#include <span>
#include <vector>

namespace nrlab {

struct PolyFit {
  // Coefficients in the monomial basis, c[k] multiplies t^k.
  std::vector<double> coefficients;
  // RMS misfit divided by RMS of the values; 0 when all values vanish.
  double relative_residual = 0.0;
  // Pointwise misfit values (value - fit), for spectral diagnostics.
  std::vector<double> misfit;
};

// Least-squares fit of degree `degree`. Requires at least degree+2 distinct
// times. Internally uses a scaled Legendre basis for conditioning.
PolyFit polyfit_residual(std::span<const double> times, std::span<const double> values,
                         int degree);

double polyfit_eval(std::span<const double> coefficients, double t);

}  // namespace nrlab
