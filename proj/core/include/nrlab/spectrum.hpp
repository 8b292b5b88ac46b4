#pragma once
#include <span>

namespace nrlab {

struct SpectralPeak {
  double omega = 0.0;      // angular frequency of the dominant peak
  double amplitude = 0.0;  // |windowed DFT| at the peak
};

// Dominant angular frequency of a sampled series: Hann window, discrete
// Fourier transform evaluated on a fine omega grid, parabolic refinement of
// the peak. Frequencies below omega_min are excluded (fit leftovers pile up
// near DC). times must be uniformly spaced and ascending.
SpectralPeak dominant_frequency(std::span<const double> times, std::span<const double> values,
                                double omega_min);

}  // namespace nrlab
