#pragma once
#include <complex>
#include <vector>

namespace nrlab {

// In-place iterative radix-2 complex FFT (power-of-two lengths only).
// sign = -1 forward, +1 inverse; inverse includes the 1/N factor.
void fft_1d(std::complex<double> *data, std::size_t n, int sign);

// 3D transform of an n^3 cube, axis passes in a fixed order.
void fft_3d(std::vector<std::complex<double>> &data, std::size_t n, int sign);

}  // namespace nrlab
