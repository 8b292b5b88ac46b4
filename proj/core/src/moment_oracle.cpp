#include <cmath>
#include <stdexcept>

#include "nrlab/kahan.hpp"
#include "nrlab/moments.hpp"

namespace nrlab {

namespace {

struct OracleIntegrals {
  // base integrals over one component's envelope f (measure d3p/(2 pi hbar)^3)
  Vec3 A{};   // <p f^2>
  Vec3 B{};   // <p (n.v) f^2>
  Vec3 C{};   // <p (n.v)^2 f^2>
  Vec3 D2{};  // <p f (n.grad)^2 f>
};

OracleIntegrals component_integrals(const MomentumAmplitude &bump, const Dispersion &disp,
                                    const MomentumGrid &grid, const Vec3 &n_hat) {
  OracleIntegrals out;
  CompensatedSum3 A, B, C, D2;
  const double tph = 2.0 * std::numbers::pi * grid.units().hbar;
  const double mu = 1.0 / (tph * tph * tph);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Vec3 &p = grid.nodes()[k];
    const double f = bump.envelope_value(p);
    if (f == 0.0) continue;
    const double w = mu * grid.weights()[k];
    const double nv = dot(n_hat, disp.group_velocity(p));
    const double dir2 = bump.envelope_dir2(p, n_hat);
    A.add((w * f * f) * p);
    B.add((w * f * f * nv) * p);
    C.add((w * f * f * nv * nv) * p);
    D2.add((w * f * dir2) * p);
  }
  out.A = A.value();
  out.B = B.value();
  out.C = C.value();
  out.D2 = D2.value();
  return out;
}

}  // namespace

MomentSeries compute_moments_oracle(const WaveSource &source, const Vec3 &n_hat,
                                    std::span<const double> times, int j_max) {
  const SourceModel &model = source.model();
  if (j_max < 1 || j_max > 3)
    throw std::invalid_argument("compute_moments_oracle: closed forms cover j_max <= 3");
  if (!model.oracle_ok)
    throw std::invalid_argument(
        "compute_moments_oracle: unsupported tag (no polynomial Heisenberg oracle for " +
        to_string(model.tag) + ")");

  const Units &u = model.units;
  const Vec3 n = normalized(n_hat);
  // dedicated grid: the integrands carry no plane-wave phases
  MomentumGrid grid(momentum_grid_for(model.momentum_support, u, 0.0, 28), u);

  MomentSeries out;
  out.direction = n;
  out.j_max = j_max;
  out.times.assign(times.begin(), times.end());
  out.values.assign(j_max, std::vector<Vec3>(times.size()));
  out.method = "oracle";

  // current prefactor: (q/m) for the hbar-carrying bilinears, (q/(m hbar))
  // for the Eq.(71)-shaped Foldy-Wouthuysen current
  const double pref = (model.tag == SourceTag::fw) ? u.q / (u.m * u.hbar) : u.q / u.m;

  for (const auto &comp : model.components) {
    for (const auto &mode : comp.modes) {
      if (!mode.bump)
        throw std::invalid_argument(
            "compute_moments_oracle: component lacks an analytic bump envelope");
      const Dispersion disp{mode.kind, u};
      const OracleIntegrals gi = component_integrals(*mode.bump, disp, grid, n);
      const double weight = std::norm(mode.bump->scale());
      const double s = disp.sign();
      const double nx0 = dot(n, mode.bump->x_offset());
      const double h2 = u.hbar * u.hbar;
      for (std::size_t ti = 0; ti < times.size(); ++ti) {
        const double t = times[ti];
        const double g1 = nx0;  // + s t (n.v) handled via B/C integrals
        if (j_max >= 1) out.values[0][ti] += (pref * weight) * gi.A;
        if (j_max >= 2)
          out.values[1][ti] += (pref * weight) * (g1 * gi.A + s * t * gi.B);
        if (j_max >= 3)
          out.values[2][ti] += (pref * weight) * (-h2 * gi.D2 + g1 * g1 * gi.A +
                                                  2.0 * s * t * g1 * gi.B + t * t * gi.C);
      }
    }
  }
  return out;
}

}  // namespace nrlab
