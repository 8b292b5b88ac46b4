#include "nrlab/moments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nrlab/errors.hpp"
#include "nrlab/kahan.hpp"
#include "nrlab/spectrum.hpp"

namespace nrlab {

namespace {

// += weight * J of `source` on the packed nodes at time t.
void add_currents(const AnySource &source, const ClippedGrid &box, double t, double weight,
                  std::vector<Vec3> &J) {
  if (const auto *wave = std::get_if<WaveSource>(&source)) {
    const SourceModel &model = wave->model();
    const auto &real = wave->realization();
    const Units &u = model.units;
    const std::size_t n = box.size();
    const unsigned ch = current_channels(model.tag, false);

    if (model.tag == SourceTag::dirac) {
      // cross-component bilinear: hold all four component values
      std::array<std::vector<cplx>, 4> comp;
      GridWave wavebuf;
      for (int a = 0; a < 4; ++a) {
        comp[a].assign(n, cplx(0.0));
        for (const ScalarMode &mode : real.components[a]) {
          eval_mode_on_grid(*real.pgrid, mode, box, t, kValue, wavebuf);
          for (std::size_t i = 0; i < n; ++i) comp[a][i] += wavebuf.value[i];
        }
      }
      const double cq = u.c * u.q * weight;
      for (std::size_t i = 0; i < n; ++i) {
        const Spinor4 psi{comp[0][i], comp[1][i], comp[2][i], comp[3][i]};
        // alpha bilinears written out (Dirac-Pauli)
        const cplx a03 = std::conj(psi[0]) * psi[3], a12 = std::conj(psi[1]) * psi[2];
        const cplx a02 = std::conj(psi[0]) * psi[2], a13 = std::conj(psi[1]) * psi[3];
        J[i].x += cq * 2.0 * (a03 + a12).real();
        J[i].y += cq * 2.0 * (a03 - a12).imag();
        J[i].z += cq * 2.0 * (a02 - a13).real();
      }
      return;
    }

    // component-additive bilinears
    const double f = weight * ((model.tag == SourceTag::fw) ? u.q / u.m : u.q * u.hbar / u.m);
    GridWave wavebuf, acc;
    for (std::size_t ci = 0; ci < real.components.size(); ++ci) {
      acc.value.assign(n, cplx(0.0));
      for (auto &g : acc.grad) g.assign(n, cplx(0.0));
      for (const ScalarMode &mode : real.components[ci]) {
        eval_mode_on_grid(*real.pgrid, mode, box, t, ch & (kValue | kGrad), wavebuf);
        for (std::size_t i = 0; i < n; ++i) {
          acc.value[i] += wavebuf.value[i];
          for (int a = 0; a < 3; ++a) acc.grad[a][i] += wavebuf.grad[a][i];
        }
      }
      for (std::size_t i = 0; i < n; ++i)
        for (int a = 0; a < 3; ++a)
          J[i][a] += f * (std::conj(acc.value[i]) * acc.grad[a][i]).imag();
    }
    return;
  }
  if (const auto *blob = std::get_if<BlobControlSource>(&source)) {
    for (std::size_t i = 0; i < box.size(); ++i)
      J[i] += weight * blob->current(box.node(i), t).J;
    return;
  }
  const auto &super = std::get<SuperposedSource>(source);
  for (const auto &[w, member] : super.members()) add_currents(*member, box, t, weight * w, J);
}

Vec3 source_drift_center(const AnySource &source, double t) {
  if (const auto *wave = std::get_if<WaveSource>(&source)) {
    const SourceModel &m = wave->model();
    const auto &mode0 = m.components[0].modes[0];
    Vec3 x0{}, v{};
    if (mode0.bump) {
      x0 = mode0.bump->x_offset();
      v = Dispersion{mode0.kind, m.units}.group_velocity(mode0.bump->p_center());
    }
    return x0 + v * t;
  }
  if (std::holds_alternative<BlobControlSource>(source)) return {};
  const auto &super = std::get<SuperposedSource>(source);
  return source_drift_center(*super.members()[0].second, t);
}

// peak |J| estimate from a handful of interior probes
double probe_peak(const AnySource &source, double t, double scale) {
  const Vec3 c = source_drift_center(source, t);
  double peak = 0.0;
  const double offs[3] = {0.0, 0.35 * scale, -0.35 * scale};
  for (double ox : offs)
    for (double oz : offs) {
      const Vec3 x = c + Vec3{ox, 0.0, oz};
      peak = std::max(peak, norm(source_current(source, x, t).J));
    }
  return peak;
}

void leakage_guard(const AnySource &source, const ClippedGrid &box,
                   std::span<const double> times, double leak_tol) {
  // Sample |J| on the integration boundary at the window edges and middle.
  const Vec3 c = box.clipped() ? box.clip_center() : box.grid().bounds.center();
  const Vec3 r = box.clipped()
                     ? box.clip_radii()
                     : 0.5 * (box.grid().bounds.hi - box.grid().bounds.lo);
  std::vector<Vec3> dirs;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j)
      for (int k = -1; k <= 1; ++k)
        if (i || j || k) dirs.push_back(normalized(Vec3{double(i), double(j), double(k)}));
  const double probe_times[3] = {times.front(), times[times.size() / 2], times.back()};
  double scale = std::min({r.x, r.y, r.z});
  for (double t : probe_times) {
    const double peak = probe_peak(source, t, 0.1 * scale);
    if (peak <= 0.0) continue;  // null source: nothing to guard
    for (const Vec3 &d : dirs) {
      const Vec3 x = c + Vec3{d.x * r.x, d.y * r.y, d.z * r.z};
      const double edge = norm(source_current(source, x, t).J);
      if (edge > leak_tol * peak)
        throw GuardError("moments: current at the box boundary exceeds " +
                         std::to_string(leak_tol) + " of its peak (box too small)");
    }
  }
}

}  // namespace

void currents_on_grid(const AnySource &source, const ClippedGrid &box, double t,
                      std::vector<Vec3> &J_out) {
  J_out.assign(box.size(), Vec3{});
  add_currents(source, box, t, 1.0, J_out);
}

MomentSeries compute_moments_spatial(const AnySource &source, const Vec3 &n_hat,
                                     std::span<const double> times, int j_max,
                                     const ClippedGrid &box, double leak_tol) {
  if (j_max < 1) throw std::invalid_argument("compute_moments_spatial: j_max >= 1");
  if (times.empty()) throw std::invalid_argument("compute_moments_spatial: no times");
  leakage_guard(source, box, times, leak_tol);

  MomentSeries out;
  out.direction = normalized(n_hat);
  out.j_max = j_max;
  out.times.assign(times.begin(), times.end());
  out.values.assign(j_max, std::vector<Vec3>(times.size()));

  std::vector<Vec3> J;
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    currents_on_grid(source, box, times[ti], J);
    std::vector<CompensatedSum3> acc(j_max);
    for (std::size_t i = 0; i < box.size(); ++i) {
      const double w = box.weight(i);
      const double u = dot(out.direction, box.node(i));
      Vec3 term = w * J[i];
      for (int j = 0; j < j_max; ++j) {
        acc[j].add(term);
        term *= u;
      }
    }
    for (int j = 0; j < j_max; ++j) out.values[j][ti] = acc[j].value();
  }
  return out;
}

DegreeReport degree_test(const MomentSeries &series, double tolerance) {
  const std::size_t nt = series.times.size();
  if (static_cast<int>(nt) < series.j_max + 4)
    throw std::invalid_argument("degree_test: need at least j_max + 4 time samples");

  DegreeReport report;
  report.tolerance = tolerance;
  report.pass = true;

  const double span = series.times.back() - series.times.front();
  const double omega_min = 1.6 * 2.0 * std::numbers::pi / span;

  for (int j = 1; j <= series.j_max; ++j) {
    DegreeEntry entry;
    entry.j = j;
    CompensatedSum mis2, val2;
    std::array<std::vector<double>, 3> misfits;
    for (int a = 0; a < 3; ++a) {
      std::vector<double> comp(nt);
      for (std::size_t k = 0; k < nt; ++k) comp[k] = series.values[j - 1][k][a];
      PolyFit fit = polyfit_residual(series.times, comp, j - 1);
      entry.coefficients[a] = fit.coefficients;
      misfits[a] = fit.misfit;
      for (std::size_t k = 0; k < nt; ++k) {
        mis2.add(fit.misfit[k] * fit.misfit[k]);
        val2.add(comp[k] * comp[k]);
      }
    }
    const double denom = std::sqrt(val2.value());
    entry.residual = denom > 0.0 ? std::sqrt(mis2.value()) / denom : 0.0;
    // dominant misfit frequency: combine components by power
    double best_a = -1.0;
    for (int a = 0; a < 3; ++a) {
      const SpectralPeak pk = dominant_frequency(series.times, misfits[a], omega_min);
      if (pk.amplitude > best_a) {
        best_a = pk.amplitude;
        entry.dominant_omega = pk.omega;
      }
    }
    entry.pass = entry.residual < tolerance;
    report.pass = report.pass && entry.pass;
    if (entry.residual > report.max_residual) {
      report.max_residual = entry.residual;
      report.dominant_omega = entry.dominant_omega;
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace nrlab
