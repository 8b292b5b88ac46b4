#include "nrlab/nonlinear.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nrlab/errors.hpp"
#include "nrlab/fft.hpp"
#include "nrlab/kahan.hpp"
#include "nrlab/packet_tables.hpp"

namespace nrlab {

namespace {

std::vector<double> wavenumbers(std::size_t n, double length) {
  std::vector<double> k(n);
  const double dk = 2.0 * std::numbers::pi / length;
  for (std::size_t j = 0; j < n; ++j) {
    const double m = j < n / 2 ? static_cast<double>(j) : static_cast<double>(j) - n;
    k[j] = dk * m;
  }
  return k;
}

double face_peak(const NonlinearGrid &g) {
  const std::size_t n = g.n;
  double peak = 0.0;
  auto look = [&](std::size_t ix, std::size_t iy, std::size_t iz) {
    peak = std::max(peak, std::abs(g.psi[(ix * n + iy) * n + iz]));
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      look(0, a, b);
      look(n - 1, a, b);
      look(a, 0, b);
      look(a, n - 1, b);
      look(a, b, 0);
      look(a, b, n - 1);
    }
  return peak;
}

double global_peak(const NonlinearGrid &g) {
  double peak = 0.0;
  for (const cplx &v : g.psi) peak = std::max(peak, std::abs(v));
  return peak;
}

double grid_norm(const NonlinearGrid &g) {
  CompensatedSum acc;
  for (const cplx &v : g.psi) acc.add(std::norm(v));
  const double h = g.spacing();
  return acc.value() * h * h * h;
}

}  // namespace

NonlinearGrid sample_initial(const WaveSource &source, std::size_t n, double length,
                             const Vec3 &origin) {
  if (source.model().tag != SourceTag::schrodinger)
    throw std::invalid_argument("sample_initial: nonlinear control evolves schrodinger data");
  NonlinearGrid g;
  g.n = n;
  g.length = length;
  g.origin = origin;
  g.units = source.units();
  g.psi.assign(n * n * n, cplx(0.0));

  // Uniform nodes wrapped as a tensor grid so the contraction engine applies.
  QuadratureGrid3D unif;
  const double h = length / static_cast<double>(n);
  for (int a = 0; a < 3; ++a) {
    unif.axis_nodes[a].resize(n);
    unif.axis_weights[a].assign(n, h);
    for (std::size_t i = 0; i < n; ++i)
      unif.axis_nodes[a][i] = origin[a] - 0.5 * length + (i + 0.5) * h;
    unif.bounds.lo[a] = origin[a] - 0.5 * length;
    unif.bounds.hi[a] = origin[a] + 0.5 * length;
  }
  const ClippedGrid xg(std::make_shared<QuadratureGrid3D>(unif));
  GridWave wave;
  const auto &real = source.realization();
  for (const ScalarMode &mode : real.components[0]) {
    eval_mode_on_grid(*real.pgrid, mode, xg, 0.0, kValue, wave);
    for (std::size_t i = 0; i < g.psi.size(); ++i) g.psi[i] += wave.value[i];
  }
  return g;
}

std::vector<Vec3> grid_current_moments(const NonlinearGrid &g, const Vec3 &n_hat, int j_max) {
  const std::size_t n = g.n;
  const Units &u = g.units;
  const std::vector<double> k = wavenumbers(n, g.length);
  // spectral gradient: three transforms
  std::array<std::vector<cplx>, 3> grad;
  for (int a = 0; a < 3; ++a) grad[a] = g.psi;
  for (int a = 0; a < 3; ++a) {
    fft_3d(grad[a], n, -1);
    for (std::size_t ix = 0; ix < n; ++ix)
      for (std::size_t iy = 0; iy < n; ++iy)
        for (std::size_t iz = 0; iz < n; ++iz) {
          const double ka = a == 0 ? k[ix] : (a == 1 ? k[iy] : k[iz]);
          grad[a][(ix * n + iy) * n + iz] *= cplx(0.0, ka);
        }
    fft_3d(grad[a], n, +1);
  }
  const double h = g.spacing();
  const double cell = h * h * h;
  const double f = u.q * u.hbar / u.m;
  std::vector<CompensatedSum3> acc(j_max);
  for (std::size_t ix = 0; ix < n; ++ix)
    for (std::size_t iy = 0; iy < n; ++iy)
      for (std::size_t iz = 0; iz < n; ++iz) {
        const std::size_t idx = (ix * n + iy) * n + iz;
        const cplx psi = g.psi[idx];
        const Vec3 J{f * (std::conj(psi) * grad[0][idx]).imag(),
                     f * (std::conj(psi) * grad[1][idx]).imag(),
                     f * (std::conj(psi) * grad[2][idx]).imag()};
        const double w = dot(n_hat, g.node(ix, iy, iz));
        double pow_w = cell;
        for (int j = 0; j < j_max; ++j) {
          acc[j].add(pow_w * J);
          pow_w *= w;
        }
      }
  std::vector<Vec3> out(j_max);
  for (int j = 0; j < j_max; ++j) out[j] = acc[j].value();
  return out;
}

NonlinearResult nonlinear_evolve(NonlinearGrid initial, double coupling, double dt, int steps,
                                 const Vec3 &n_hat, int j_max, double leak_tol) {
  if (initial.n == 0 || (initial.n & (initial.n - 1)) != 0)
    throw std::invalid_argument("nonlinear_evolve: grid n must be a power of two");
  const std::size_t n = initial.n;
  const Units &u = initial.units;
  const std::vector<double> k = wavenumbers(n, initial.length);
  const double kmax = std::numbers::pi * static_cast<double>(n) / initial.length;
  const double omega_max = u.hbar * 3.0 * kmax * kmax / (2.0 * u.m);
  if (dt * omega_max >= 0.5)
    throw GuardError("nonlinear_evolve: dt * max kinetic frequency exceeds 0.5");
  const double peak0 = global_peak(initial);
  if (face_peak(initial) > leak_tol * peak0)
    throw GuardError("nonlinear_evolve: initial boundary amplitude above leakage threshold");

  // half-step kinetic phases
  std::vector<cplx> half(n * n * n);
  for (std::size_t ix = 0; ix < n; ++ix)
    for (std::size_t iy = 0; iy < n; ++iy)
      for (std::size_t iz = 0; iz < n; ++iz) {
        const double k2 = k[ix] * k[ix] + k[iy] * k[iy] + k[iz] * k[iz];
        const double w = u.hbar * k2 / (2.0 * u.m);
        half[(ix * n + iy) * n + iz] = std::polar(1.0, -w * dt / 2.0);
      }

  NonlinearResult out;
  out.times.push_back(initial.time);
  out.norms.push_back(grid_norm(initial));
  out.moments.push_back(grid_current_moments(initial, n_hat, j_max));

  NonlinearGrid &g = initial;
  for (int step = 0; step < steps; ++step) {
    fft_3d(g.psi, n, -1);
    for (std::size_t i = 0; i < g.psi.size(); ++i) g.psi[i] *= half[i];
    fft_3d(g.psi, n, +1);
    if (coupling != 0.0) {
      for (cplx &v : g.psi) v *= std::polar(1.0, -coupling * std::norm(v) * dt / u.hbar);
    }
    fft_3d(g.psi, n, -1);
    for (std::size_t i = 0; i < g.psi.size(); ++i) g.psi[i] *= half[i];
    fft_3d(g.psi, n, +1);
    g.time += dt;

    out.times.push_back(g.time);
    out.norms.push_back(grid_norm(g));
    out.moments.push_back(grid_current_moments(g, n_hat, j_max));
    if (face_peak(g) > leak_tol * peak0)
      throw GuardError("nonlinear_evolve: boundary amplitude exceeded leakage threshold");
  }
  out.state = std::move(g);
  return out;
}

}  // namespace nrlab
