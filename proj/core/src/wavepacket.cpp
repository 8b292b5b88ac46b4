#include "nrlab/wavepacket.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nrlab/kahan.hpp"

namespace nrlab {

namespace {

void check_coverage(const AmplitudeBase &amplitude, const MomentumGrid &grid) {
  const Box3 s = amplitude.support_box();
  const Box3 b = grid.grid().bounds;
  for (int a = 0; a < 3; ++a) {
    const double tol = 1e-12 * (1.0 + std::abs(s.hi[a]) + std::abs(s.lo[a]));
    if (s.lo[a] < b.lo[a] - tol || s.hi[a] > b.hi[a] + tol)
      throw std::invalid_argument("wavepacket: momentum grid does not cover the support");
  }
}

double inv_measure(const Units &u) {
  const double tph = 2.0 * std::numbers::pi * u.hbar;
  return 1.0 / (tph * tph * tph);
}

}  // namespace

WaveEval evaluate(const AmplitudeBase &amplitude, const Dispersion &dispersion,
                  const MomentumGrid &grid, const Vec3 &x, double t) {
  check_coverage(amplitude, grid);
  const double hbar = grid.units().hbar;
  const int s = dispersion.sign();
  CompensatedSumC val, gx, gy, gz;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Vec3 &p = grid.nodes()[k];
    const cplx a = amplitude.value(p);
    if (a == cplx(0.0)) continue;
    const double phase = (dot(p, x) - s * dispersion.energy(p) * t) / hbar;
    const cplx term = grid.weights()[k] * a * std::polar(1.0, phase);
    val.add(term);
    const cplx ip = cplx(0.0, 1.0 / hbar);
    gx.add(term * ip * p.x);
    gy.add(term * ip * p.y);
    gz.add(term * ip * p.z);
  }
  const double mu = inv_measure(grid.units());
  return {mu * val.value(), {mu * gx.value(), mu * gy.value(), mu * gz.value()}};
}

cplx time_derivative(const AmplitudeBase &amplitude, const Dispersion &dispersion,
                     const MomentumGrid &grid, const Vec3 &x, double t, int order) {
  if (order < 0) throw std::invalid_argument("time_derivative: order must be >= 0");
  check_coverage(amplitude, grid);
  const double hbar = grid.units().hbar;
  const int s = dispersion.sign();
  CompensatedSumC val;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Vec3 &p = grid.nodes()[k];
    const cplx a = amplitude.value(p);
    if (a == cplx(0.0)) continue;
    const double E = dispersion.energy(p);
    const double phase = (dot(p, x) - s * E * t) / hbar;
    cplx factor = 1.0;
    const cplx de(0.0, -s * E / hbar);
    for (int j = 0; j < order; ++j) factor *= de;
    val.add(grid.weights()[k] * a * factor * std::polar(1.0, phase));
  }
  return inv_measure(grid.units()) * val.value();
}

double norm(const AmplitudeBase &amplitude, const MomentumGrid &grid) {
  check_coverage(amplitude, grid);
  CompensatedSum acc;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const cplx a = amplitude.value(grid.nodes()[k]);
    acc.add(grid.weights()[k] * std::norm(a));
  }
  return inv_measure(grid.units()) * acc.value();
}

ModePointEval eval_mode_point(const MomentumGrid &grid, const ScalarMode &mode, const Vec3 &x,
                              double t, unsigned channels) {
  const double hbar = grid.units().hbar;
  const int s = mode.sign;
  CompensatedSumC val, gx, gy, gz, dt, dtgx, dtgy, dtgz, dt2, lap;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const cplx a = mode.amplitude[k];
    if (a == cplx(0.0)) continue;
    const Vec3 &p = grid.nodes()[k];
    const double E = mode.rest_energy + mode.slow_energy[k];
    const double phase = (dot(p, x) - s * E * t) / hbar;
    const cplx term = grid.weights()[k] * a * std::polar(1.0, phase);
    const cplx de(0.0, -s * E / hbar);
    if (channels & kValue) val.add(term);
    if (channels & (kGrad | kDtGrad)) {
      const cplx ip(0.0, 1.0 / hbar);
      const cplx tx = term * ip * p.x, ty = term * ip * p.y, tz = term * ip * p.z;
      if (channels & kGrad) {
        gx.add(tx);
        gy.add(ty);
        gz.add(tz);
      }
      if (channels & kDtGrad) {
        dtgx.add(de * tx);
        dtgy.add(de * ty);
        dtgz.add(de * tz);
      }
    }
    if (channels & kDt) dt.add(de * term);
    if (channels & kDt2) dt2.add(de * de * term);
    if (channels & kLaplacian) lap.add(term * (-norm2(p) / (hbar * hbar)));
  }
  const double mu = inv_measure(grid.units());
  ModePointEval out;
  out.value = mu * val.value();
  out.grad = {mu * gx.value(), mu * gy.value(), mu * gz.value()};
  out.dt = mu * dt.value();
  out.dtgrad = {mu * dtgx.value(), mu * dtgy.value(), mu * dtgz.value()};
  out.dt2 = mu * dt2.value();
  out.laplacian = mu * lap.value();
  return out;
}

}  // namespace nrlab
