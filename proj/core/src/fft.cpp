#include "nrlab/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nrlab/threading.hpp"

namespace nrlab {

void fft_1d(std::complex<double> *a, std::size_t n, int sign) {
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft_1d: n must be 2^k");
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (sign > 0) {
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) a[i] *= inv;
  }
}

void fft_3d(std::vector<std::complex<double>> &data, std::size_t n, int sign) {
  if (data.size() != n * n * n) throw std::invalid_argument("fft_3d: size mismatch");
  // z lines (contiguous)
  parallel_for(n * n, [&](std::size_t row) { fft_1d(data.data() + row * n, n, sign); });
  // y lines
  parallel_for(n * n, [&](std::size_t idx) {
    const std::size_t ix = idx / n, iz = idx % n;
    std::vector<std::complex<double>> line(n);
    for (std::size_t iy = 0; iy < n; ++iy) line[iy] = data[(ix * n + iy) * n + iz];
    fft_1d(line.data(), n, sign);
    for (std::size_t iy = 0; iy < n; ++iy) data[(ix * n + iy) * n + iz] = line[iy];
  });
  // x lines
  parallel_for(n * n, [&](std::size_t idx) {
    const std::size_t iy = idx / n, iz = idx % n;
    std::vector<std::complex<double>> line(n);
    for (std::size_t ix = 0; ix < n; ++ix) line[ix] = data[(ix * n + iy) * n + iz];
    fft_1d(line.data(), n, sign);
    for (std::size_t ix = 0; ix < n; ++ix) data[(ix * n + iy) * n + iz] = line[ix];
  });
}

}  // namespace nrlab
