#include "nrlab/source_model.hpp"

#include <cmath>
#include <stdexcept>

namespace nrlab {

namespace {

// Scalar channel of a constant-spinor Dirac packet: f(p) [Lambda_±(p) c]_a.
class DiracChannelAmplitude : public AmplitudeBase {
 public:
  DiracChannelAmplitude(std::shared_ptr<const MomentumAmplitude> envelope, Spinor4 coeffs,
                        int component, int branch_sign, const Units &units)
      : env_(std::move(envelope)),
        coeffs_(coeffs),
        component_(component),
        branch_(branch_sign),
        units_(units) {}

  cplx value(const Vec3 &p) const override {
    const cplx f = env_->value(p);
    if (f == cplx(0.0)) return 0.0;
    const Mat4 proj = dirac_projector(p, units_, branch_);
    cplx acc = 0.0;
    for (int c = 0; c < 4; ++c) acc += proj[component_][c] * coeffs_[c];
    return f * acc;
  }
  Box3 support_box() const override { return env_->support_box(); }
  double support_outer_radius() const override { return env_->support_outer_radius(); }

 private:
  std::shared_ptr<const MomentumAmplitude> env_;
  Spinor4 coeffs_;
  int component_;
  int branch_;
  Units units_;
};

std::shared_ptr<MomentumAmplitude> make_bump(const PacketSpec &packet, const Units &units,
                                             double cap) {
  return std::make_shared<MomentumAmplitude>(packet.p_center, packet.support_radius,
                                             packet.smoothness, packet.x_offset, units, cap);
}

double relativistic_cap(const PacketSpec &packet, const Units &units) {
  // Any finite band works for the relativistic equations; leave generous room
  // for transforms.
  const double occupied = norm(packet.p_center) + packet.support_radius;
  return std::max(1000.0 * units.m * units.c, 4.0 * occupied);
}

void finish_common(SourceModel &m, const std::shared_ptr<MomentumAmplitude> &bump) {
  m.base_bump = bump;
  m.sigma_x = bump->position_rms();
  m.momentum_support = bump->support_box();
  const double pmax = bump->support_outer_radius();
  Dispersion d{m.components[0].modes[0].kind, m.units};
  m.max_group_speed = norm(d.group_velocity({pmax, 0.0, 0.0}));
  m.slow_energy_max = d.slow_energy({pmax, 0.0, 0.0});
}

}  // namespace

std::string to_string(SourceTag tag) {
  switch (tag) {
    case SourceTag::schrodinger: return "schrodinger";
    case SourceTag::kg_plus: return "kg_plus";
    case SourceTag::kg_minus: return "kg_minus";
    case SourceTag::kg_mixed: return "kg_mixed";
    case SourceTag::dirac: return "dirac";
    case SourceTag::fw: return "fw";
    case SourceTag::canonical: return "canonical";
  }
  return "unknown";
}

SourceModel make_schrodinger(const PacketSpec &packet, const Units &units) {
  units.validate();
  if (!(packet.epsilon > 0.0))
    throw std::invalid_argument("schrodinger source: epsilon must be positive");
  SourceModel m;
  m.tag = SourceTag::schrodinger;
  m.units = units;
  m.p_cap = (1.0 - packet.epsilon) * units.m * units.c;
  auto bump = make_bump(packet, units, m.p_cap);
  m.components.resize(1);
  m.components[0].modes.push_back({bump, bump, DispersionKind::schrodinger});
  m.oracle_ok = true;
  finish_common(m, bump);
  return m;
}

SourceModel make_kg(const PacketSpec &packet, const Units &units, int sign,
                    double mix_weight_plus) {
  units.validate();
  SourceModel m;
  m.units = units;
  m.p_cap = relativistic_cap(packet, units);
  m.components.resize(1);
  if (sign > 0 || sign < 0) {
    m.tag = sign > 0 ? SourceTag::kg_plus : SourceTag::kg_minus;
    auto bump = make_bump(packet, units, m.p_cap);
    m.components[0].modes.push_back(
        {bump, bump, sign > 0 ? DispersionKind::kg_plus : DispersionKind::kg_minus});
    m.oracle_ok = true;
    finish_common(m, bump);
  } else {
    m.tag = SourceTag::kg_mixed;
    const double wp = mix_weight_plus;
    if (!(wp > 0.0 && wp < 1.0))
      throw std::invalid_argument("kg_mixed: mix weight must lie strictly inside (0,1)");
    const double wm = std::sqrt(1.0 - wp * wp);
    auto plus = make_bump(packet, units, m.p_cap);
    auto minus = make_bump(packet, units, m.p_cap);
    plus->set_scale(wp);
    minus->set_scale(wm);
    m.components[0].modes.push_back({plus, plus, DispersionKind::kg_plus});
    m.components[0].modes.push_back({minus, minus, DispersionKind::kg_minus});
    m.oracle_ok = false;  // mixed states have no polynomial oracle
    finish_common(m, plus);
  }
  return m;
}

SourceModel make_dirac(const PacketSpec &packet, const Units &units, const Spinor4 &coeffs) {
  units.validate();
  double n2 = 0.0;
  for (const cplx &c : coeffs) n2 += std::norm(c);
  if (n2 <= 0.0) throw std::invalid_argument("dirac source: zero spinor");
  Spinor4 c = coeffs;
  for (cplx &v : c) v /= std::sqrt(n2);

  SourceModel m;
  m.tag = SourceTag::dirac;
  m.units = units;
  m.p_cap = relativistic_cap(packet, units);
  auto bump = make_bump(packet, units, m.p_cap);
  m.components.resize(4);
  for (int a = 0; a < 4; ++a)
    for (int branch : {+1, -1}) {
      auto amp = std::make_shared<DiracChannelAmplitude>(bump, c, a, branch, units);
      m.components[a].modes.push_back(
          {amp, nullptr, branch > 0 ? DispersionKind::kg_plus : DispersionKind::kg_minus});
    }
  m.oracle_ok = false;  // Heisenberg coordinate is not linear in t here
  finish_common(m, bump);
  return m;
}

SourceModel make_fw(const PacketSpec &packet, const Units &units, bool upper_block,
                    const std::array<cplx, 2> &coeffs) {
  units.validate();
  const double n2 = std::norm(coeffs[0]) + std::norm(coeffs[1]);
  if (n2 <= 0.0) throw std::invalid_argument("fw source: zero spinor");
  SourceModel m;
  m.tag = SourceTag::fw;
  m.units = units;
  m.upper_block = upper_block;
  m.p_cap = relativistic_cap(packet, units);
  m.components.resize(2);
  const DispersionKind kind =
      upper_block ? DispersionKind::kg_plus : DispersionKind::kg_minus;
  std::shared_ptr<MomentumAmplitude> first;
  for (int a = 0; a < 2; ++a) {
    auto bump = make_bump(packet, units, m.p_cap);
    bump->set_scale(coeffs[a] / std::sqrt(n2));
    if (!first) first = bump;
    m.components[a].modes.push_back({bump, bump, kind});
  }
  m.oracle_ok = true;
  finish_common(m, first);
  return m;
}

SourceModel make_canonical(const PacketSpec &packet, const Units &units, double spin,
                           const std::vector<cplx> &coeffs) {
  units.validate();
  const double two_s = 2.0 * spin;
  if (spin < 0.0 || std::abs(two_s - std::round(two_s)) > 1e-12)
    throw std::invalid_argument("canonical source: spin must be a non-negative half-integer");
  const std::size_t n = static_cast<std::size_t>(2 * (std::llround(two_s) + 1));
  if (coeffs.size() != n)
    throw std::invalid_argument("canonical source: need 2(2s+1) component coefficients");
  double n2 = 0.0;
  for (const cplx &c : coeffs) n2 += std::norm(c);
  if (n2 <= 0.0) throw std::invalid_argument("canonical source: zero coefficient vector");

  SourceModel m;
  m.tag = SourceTag::canonical;
  m.units = units;
  m.spin = spin;
  m.p_cap = relativistic_cap(packet, units);
  m.components.resize(n);
  std::shared_ptr<MomentumAmplitude> first;
  for (std::size_t a = 0; a < n; ++a) {
    auto bump = make_bump(packet, units, m.p_cap);
    bump->set_scale(coeffs[a] / std::sqrt(n2));
    if (!first) first = bump;
    const bool upper = a < n / 2;
    m.components[a].modes.push_back(
        {bump, bump,
         upper ? DispersionKind::canonical_plus : DispersionKind::canonical_minus});
  }
  m.oracle_ok = true;
  finish_common(m, first);
  return m;
}

SourceRealization realize(const SourceModel &model, double x_reach, int base_nodes) {
  // Union of mode supports.
  Box3 box = model.momentum_support;
  for (const auto &comp : model.components)
    for (const auto &mode : comp.modes) {
      const Box3 s = mode.amplitude->support_box();
      for (int a = 0; a < 3; ++a) {
        box.lo[a] = std::min(box.lo[a], s.lo[a]);
        box.hi[a] = std::max(box.hi[a], s.hi[a]);
      }
    }
  SourceRealization out;
  auto grid = std::make_shared<MomentumGrid>(
      momentum_grid_for(box, model.units, x_reach, base_nodes), model.units);
  out.pgrid = grid;
  out.model = &model;
  out.components.resize(model.components.size());
  for (std::size_t cindex = 0; cindex < model.components.size(); ++cindex) {
    for (const auto &spec : model.components[cindex].modes) {
      ScalarMode mode;
      mode.dispersion = Dispersion{spec.kind, model.units};
      mode.bump = spec.bump;
      mode.amplitude.resize(grid->size());
      for (std::size_t k = 0; k < grid->size(); ++k)
        mode.amplitude[k] = spec.amplitude->value(grid->nodes()[k]);
      finalize_mode(mode, *grid);
      out.components[cindex].push_back(std::move(mode));
    }
  }
  return out;
}

}  // namespace nrlab
