#include "nrlab/spectrum.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace nrlab {

SpectralPeak dominant_frequency(std::span<const double> times, std::span<const double> values,
                                double omega_min) {
  const std::size_t n = times.size();
  if (n < 4 || values.size() != n)
    throw std::invalid_argument("dominant_frequency: need >= 4 samples");
  const double span = times.back() - times.front();
  const double dt = span / static_cast<double>(n - 1);
  if (span <= 0.0 || dt <= 0.0)
    throw std::invalid_argument("dominant_frequency: times must be ascending");

  std::vector<double> windowed(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double h = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * k / (n - 1)));
    windowed[k] = h * values[k];
  }

  const double omega_max = 0.95 * std::numbers::pi / dt;  // just under Nyquist
  if (omega_min >= omega_max) omega_min = 0.5 * omega_max;
  const double dw = (omega_max - omega_min) / 4096.0;

  auto amp = [&](double w) {
    std::complex<double> acc = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      acc += windowed[k] * std::polar(1.0, -w * (times[k] - times.front()));
    return std::abs(acc);
  };

  double best_w = omega_min, best_a = -1.0;
  for (int i = 0; i <= 4096; ++i) {
    const double w = omega_min + dw * i;
    const double a = amp(w);
    if (a > best_a) {
      best_a = a;
      best_w = w;
    }
  }
  // Parabolic refinement on the amplitude around the grid peak.
  const double am = amp(best_w - dw), ap = amp(best_w + dw);
  const double denom = am - 2.0 * best_a + ap;
  double w = best_w;
  if (denom < 0.0) {
    const double shift = 0.5 * (am - ap) / denom;
    if (std::abs(shift) <= 1.0) w = best_w + shift * dw;
  }
  return {w, amp(w)};
}

}  // namespace nrlab
