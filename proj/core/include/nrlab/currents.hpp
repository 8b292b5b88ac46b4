#pragma once
#include <memory>
#include <variant>
#include <vector>

#include "nrlab/chirp_evaluator.hpp"
#include "nrlab/source_model.hpp"

namespace nrlab {

struct CurrentSample {
  double rho = 0.0;
  Vec3 J{};
};

struct CurrentDerivs {
  double rho = 0.0;
  double drho_dt = 0.0;
  Vec3 J{};
  Vec3 dJ_dt{};
  CurrentSample sample() const { return {rho, J}; }
};

// Channel set a tag needs for (rho, J) and their time derivatives.
unsigned current_channels(SourceTag tag, bool with_time_derivs);

// Assembles the 4-current of `model` from per-component wave values. comps
// holds one summed ModePointEval per wave-function component.
CurrentDerivs assemble_current(const SourceModel &model,
                               const std::vector<ModePointEval> &comps);

// A wave-equation source realized for evaluation; the reference (direct
// spectral) current evaluator lives here. x_reach must bound |x - v t| over
// every point this instance will be asked for.
class WaveSource {
 public:
  WaveSource(SourceModel model, double x_reach, int base_nodes = 16);

  const SourceModel &model() const { return model_; }
  const SourceRealization &realization() const { return real_; }
  const Units &units() const { return model_.units; }

  CurrentDerivs current_with_derivs(const Vec3 &x, double t) const;
  CurrentSample current(const Vec3 &x, double t) const { return current_with_derivs(x, t).sample(); }

  // |d rho/dt + div J| by spectral derivatives (continuity diagnostic).
  double continuity_residual(const Vec3 &x, double t) const;

  // Per-component point values (summed over modes) with requested channels.
  void component_values(const Vec3 &x, double t, unsigned channels,
                        std::vector<ModePointEval> &out) const;

 private:
  SourceModel model_;
  SourceRealization real_;
};

// Oscillating Gaussian current, the radiating positive control:
//   J = z_hat A exp(-|x|^2 / 2 sigma^2) cos(omega t)
//   rho = A (z/sigma^2) exp(-|x|^2 / 2 sigma^2) sin(omega t)/omega
// rho integrates the continuity equation exactly (zero net charge).
struct BlobParams {
  double sigma = 1.0;
  double omega = 1.0;
  double amplitude = 1.0;
};

class BlobControlSource {
 public:
  BlobControlSource(const BlobParams &params, const Units &units);
  CurrentDerivs current_with_derivs(const Vec3 &x, double t) const;
  CurrentSample current(const Vec3 &x, double t) const { return current_with_derivs(x, t).sample(); }
  const BlobParams &params() const { return params_; }
  const Units &units() const { return units_; }

 private:
  BlobParams params_;
  Units units_;
};

class SuperposedSource;

// Any evaluable current source (current-level superposition per Eq. of
// linearity: fields of a sum are sums of fields).
using AnySource = std::variant<WaveSource, BlobControlSource, SuperposedSource>;

class SuperposedSource {
 public:
  SuperposedSource(std::vector<std::pair<double, std::shared_ptr<const AnySource>>> members);
  CurrentDerivs current_with_derivs(const Vec3 &x, double t) const;
  CurrentSample current(const Vec3 &x, double t) const { return current_with_derivs(x, t).sample(); }
  const Units &units() const { return units_; }
  const auto &members() const { return members_; }

 private:
  std::vector<std::pair<double, std::shared_ptr<const AnySource>>> members_;
  Units units_;
};

const Units &source_units(const AnySource &s);
CurrentDerivs source_current_with_derivs(const AnySource &s, const Vec3 &x, double t);
inline CurrentSample source_current(const AnySource &s, const Vec3 &x, double t) {
  return source_current_with_derivs(s, x, t).sample();
}

// --- spec-level per-tag operations (validate the tag, then delegate) ---
CurrentSample schrodinger_current(const WaveSource &s, const Vec3 &x, double t);
CurrentSample kg_current(const WaveSource &s, const Vec3 &x, double t);
CurrentSample dirac_current(const WaveSource &s, const Vec3 &x, double t);
CurrentSample fw_current(const WaveSource &s, const Vec3 &x, double t);
CurrentSample canonical_current(const WaveSource &s, const Vec3 &x, double t);
CurrentSample blob_control_current(const BlobParams &params, const Units &units, const Vec3 &x,
                                   double t);

// Momentum-space Foldy-Wouthuysen transform of a 4-spinor at momentum p.
Spinor4 fw_transform(const Spinor4 &spinor, const Vec3 &p, const Units &units);

}  // namespace nrlab
