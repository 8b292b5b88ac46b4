#include "nrlab/currents.hpp"

#include <cmath>
#include <stdexcept>

namespace nrlab {

unsigned current_channels(SourceTag tag, bool with_time_derivs) {
  switch (tag) {
    case SourceTag::schrodinger:
      return kValue | kGrad | (with_time_derivs ? (kDt | kDtGrad) : 0u);
    case SourceTag::dirac:
      return kValue | (with_time_derivs ? kDt : 0u);
    default:
      // Klein-Gordon form currents need the second time derivative for
      // d rho/dt.
      return kValue | kGrad | kDt | (with_time_derivs ? (kDtGrad | kDt2) : 0u);
  }
}

CurrentDerivs assemble_current(const SourceModel &model,
                               const std::vector<ModePointEval> &comps) {
  const Units &u = model.units;
  CurrentDerivs out;
  switch (model.tag) {
    case SourceTag::schrodinger: {
      const ModePointEval &w = comps[0];
      const double q = u.q;
      out.rho = q * std::norm(w.value);
      out.drho_dt = 2.0 * q * (std::conj(w.value) * w.dt).real();
      const double f = q * u.hbar / u.m;
      for (int a = 0; a < 3; ++a) {
        out.J[a] = f * (std::conj(w.value) * w.grad[a]).imag();
        out.dJ_dt[a] =
            f * (std::conj(w.dt) * w.grad[a] + std::conj(w.value) * w.dtgrad[a]).imag();
      }
      break;
    }
    case SourceTag::dirac: {
      const double q = u.q, c = u.c;
      Spinor4 psi{comps[0].value, comps[1].value, comps[2].value, comps[3].value};
      Spinor4 psidot{comps[0].dt, comps[1].dt, comps[2].dt, comps[3].dt};
      double rho = 0.0, drho = 0.0;
      for (int a = 0; a < 4; ++a) {
        rho += std::norm(psi[a]);
        drho += 2.0 * (std::conj(psi[a]) * psidot[a]).real();
      }
      out.rho = q * rho;
      out.drho_dt = q * drho;
      for (int i = 0; i < 3; ++i) {
        const Mat4 alpha = dirac_alpha(i);
        out.J[i] = c * q * bilinear(psi, alpha, psi).real();
        out.dJ_dt[i] = 2.0 * c * q * bilinear(psi, alpha, psidot).real();
      }
      break;
    }
    case SourceTag::fw: {
      // Eq-(71)-shaped current: spatial part (q/2mi) phi^dag <-> grad phi
      // taken literally; rho fixed by continuity. Differs from the canonical
      // normalization by exactly 1/hbar.
      const double f = u.q / u.m;
      for (const ModePointEval &w : comps) {
        out.rho += -(f / (u.c * u.c)) * (std::conj(w.value) * w.dt).imag();
        out.drho_dt += -(f / (u.c * u.c)) * (std::conj(w.value) * w.dt2).imag();
        for (int a = 0; a < 3; ++a) {
          out.J[a] += f * (std::conj(w.value) * w.grad[a]).imag();
          out.dJ_dt[a] +=
              f * (std::conj(w.dt) * w.grad[a] + std::conj(w.value) * w.dtgrad[a]).imag();
        }
      }
      break;
    }
    default: {
      // kg_plus / kg_minus / kg_mixed / canonical: Klein-Gordon form.
      const double f = u.q * u.hbar / u.m;
      for (const ModePointEval &w : comps) {
        out.rho += -(f / (u.c * u.c)) * (std::conj(w.value) * w.dt).imag();
        out.drho_dt += -(f / (u.c * u.c)) * (std::conj(w.value) * w.dt2).imag();
        for (int a = 0; a < 3; ++a) {
          out.J[a] += f * (std::conj(w.value) * w.grad[a]).imag();
          out.dJ_dt[a] +=
              f * (std::conj(w.dt) * w.grad[a] + std::conj(w.value) * w.dtgrad[a]).imag();
        }
      }
      break;
    }
  }
  return out;
}

WaveSource::WaveSource(SourceModel model, double x_reach, int base_nodes)
    : model_(std::move(model)), real_(realize(model_, x_reach, base_nodes)) {}

void WaveSource::component_values(const Vec3 &x, double t, unsigned channels,
                                  std::vector<ModePointEval> &out) const {
  out.assign(model_.components.size(), ModePointEval{});
  for (std::size_t ci = 0; ci < real_.components.size(); ++ci) {
    for (const ScalarMode &mode : real_.components[ci]) {
      const ModePointEval e = eval_mode_point(*real_.pgrid, mode, x, t, channels);
      ModePointEval &acc = out[ci];
      acc.value += e.value;
      acc.dt += e.dt;
      acc.dt2 += e.dt2;
      acc.laplacian += e.laplacian;
      for (int a = 0; a < 3; ++a) {
        acc.grad[a] += e.grad[a];
        acc.dtgrad[a] += e.dtgrad[a];
      }
    }
  }
}

CurrentDerivs WaveSource::current_with_derivs(const Vec3 &x, double t) const {
  std::vector<ModePointEval> comps;
  component_values(x, t, current_channels(model_.tag, true), comps);
  return assemble_current(model_, comps);
}

double WaveSource::continuity_residual(const Vec3 &x, double t) const {
  // div J from spectral derivatives: every current here is a bilinear whose
  // divergence needs the Laplacian channel.
  std::vector<ModePointEval> comps;
  component_values(x, t, current_channels(model_.tag, true) | kLaplacian | kGrad, comps);
  const CurrentDerivs cd = assemble_current(model_, comps);
  const Units &u = model_.units;
  double divJ = 0.0;
  switch (model_.tag) {
    case SourceTag::schrodinger: {
      const ModePointEval &w = comps[0];
      divJ = (u.q * u.hbar / u.m) * (std::conj(w.value) * w.laplacian).imag();
      break;
    }
    case SourceTag::dirac: {
      // div J = 2 c q Re(psi^dag alpha . grad psi)
      for (int i = 0; i < 3; ++i) {
        const Mat4 alpha = dirac_alpha(i);
        Spinor4 psi{comps[0].value, comps[1].value, comps[2].value, comps[3].value};
        Spinor4 dpsi{comps[0].grad[i], comps[1].grad[i], comps[2].grad[i],
                     comps[3].grad[i]};
        divJ += 2.0 * u.c * u.q * bilinear(psi, alpha, dpsi).real();
      }
      break;
    }
    case SourceTag::fw: {
      for (const ModePointEval &w : comps)
        divJ += (u.q / u.m) * (std::conj(w.value) * w.laplacian).imag();
      break;
    }
    default: {
      for (const ModePointEval &w : comps)
        divJ += (u.q * u.hbar / u.m) * (std::conj(w.value) * w.laplacian).imag();
      break;
    }
  }
  return std::abs(cd.drho_dt + divJ);
}

BlobControlSource::BlobControlSource(const BlobParams &params, const Units &units)
    : params_(params), units_(units) {
  units_.validate();
  if (!(params.sigma > 0.0 && params.omega > 0.0 && params.amplitude > 0.0))
    throw std::invalid_argument("blob control: sigma, omega, amplitude must be positive");
}

CurrentDerivs BlobControlSource::current_with_derivs(const Vec3 &x, double t) const {
  const double s2 = params_.sigma * params_.sigma;
  const double g = params_.amplitude * std::exp(-0.5 * norm2(x) / s2);
  const double cw = std::cos(params_.omega * t), sw = std::sin(params_.omega * t);
  CurrentDerivs out;
  out.J = {0.0, 0.0, g * cw};
  out.dJ_dt = {0.0, 0.0, -g * params_.omega * sw};
  out.rho = g * (x.z / s2) * sw / params_.omega;
  out.drho_dt = g * (x.z / s2) * cw;
  return out;
}

SuperposedSource::SuperposedSource(
    std::vector<std::pair<double, std::shared_ptr<const AnySource>>> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("superpose: no members");
  units_ = source_units(*members_[0].second);
  for (const auto &[w, src] : members_)
    if (!(source_units(*src) == units_))
      throw std::invalid_argument("superpose: unit mismatch between members");
}

CurrentDerivs SuperposedSource::current_with_derivs(const Vec3 &x, double t) const {
  CurrentDerivs out;
  for (const auto &[w, src] : members_) {
    const CurrentDerivs c = source_current_with_derivs(*src, x, t);
    out.rho += w * c.rho;
    out.drho_dt += w * c.drho_dt;
    out.J += w * c.J;
    out.dJ_dt += w * c.dJ_dt;
  }
  return out;
}

const Units &source_units(const AnySource &s) {
  return std::visit([](const auto &src) -> const Units & { return src.units(); }, s);
}

CurrentDerivs source_current_with_derivs(const AnySource &s, const Vec3 &x, double t) {
  return std::visit([&](const auto &src) { return src.current_with_derivs(x, t); }, s);
}

namespace {
CurrentSample tag_checked(const WaveSource &s, const Vec3 &x, double t, SourceTag expect,
                          const char *op) {
  if (s.model().tag != expect)
    throw std::invalid_argument(std::string(op) + ": wrong source tag " +
                                to_string(s.model().tag));
  return s.current(x, t);
}
}  // namespace

CurrentSample schrodinger_current(const WaveSource &s, const Vec3 &x, double t) {
  return tag_checked(s, x, t, SourceTag::schrodinger, "schrodinger_current");
}
CurrentSample kg_current(const WaveSource &s, const Vec3 &x, double t) {
  const SourceTag tag = s.model().tag;
  if (tag != SourceTag::kg_plus && tag != SourceTag::kg_minus && tag != SourceTag::kg_mixed)
    throw std::invalid_argument("kg_current: wrong source tag " + to_string(tag));
  return s.current(x, t);
}
CurrentSample dirac_current(const WaveSource &s, const Vec3 &x, double t) {
  return tag_checked(s, x, t, SourceTag::dirac, "dirac_current");
}
CurrentSample fw_current(const WaveSource &s, const Vec3 &x, double t) {
  return tag_checked(s, x, t, SourceTag::fw, "fw_current");
}
CurrentSample canonical_current(const WaveSource &s, const Vec3 &x, double t) {
  if (s.model().tag != SourceTag::canonical)
    throw std::invalid_argument("canonical_current: wrong source tag");
  const std::size_t expect = 2 * (std::llround(2.0 * s.model().spin) + 1);
  if (s.model().components.size() != expect)
    throw std::invalid_argument("canonical_current: wrong component count");
  return s.current(x, t);
}
CurrentSample blob_control_current(const BlobParams &params, const Units &units, const Vec3 &x,
                                   double t) {
  return BlobControlSource(params, units).current(x, t);
}

Spinor4 fw_transform(const Spinor4 &spinor, const Vec3 &p, const Units &units) {
  return apply(fw_matrix(p, units), spinor);
}

}  // namespace nrlab
