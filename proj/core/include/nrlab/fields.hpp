#pragma once
#include <optional>
#include <span>

#include "nrlab/moments.hpp"

namespace nrlab {

enum class FieldKind { retarded, advanced };

struct FieldSample {
  Vec3 E{}, B{};
  Vec3 position{};
  double time = 0.0;
  FieldKind kind = FieldKind::retarded;
};

struct FluxReport {
  std::vector<double> radii;
  std::vector<double> flux;     // Poynting flux through the sphere (light front)
  std::vector<double> sup_RB;   // sup over directions of R |B|
  double slope_flux = 0.0;      // log-log fitted slope of |flux|
  double slope_sup_RB = 0.0;    // log-log fitted slope of sup R|B|
};

struct AdvRetReport {
  double shell_radius = 0.0;
  std::vector<double> times;
  std::vector<double> max_rel_E;  // per time
  std::vector<double> max_rel_B;
  double max_rel = 0.0;  // overall, both fields
};

struct FieldOptions {
  // amplitude ratio defining the box boundary (|psi| relative to peak)
  double box_amp_ratio = 3e-4;
  // Taylor-table accuracy target for the slab evaluator
  double slab_eps = 1e-9;
  // guard: reject field points where |J(x,t)| exceeds this fraction of peak
  double support_margin_ratio = 1e-5;
  // deep-history halo (exact chirp route, schrodinger sources only):
  // 0 disables; otherwise the retarded/advanced cones are integrated out to
  // this depth in |t - tau| c.
  double halo_depth = 0.0;
  double halo_amp_ratio = 3e-6;  // cap sizing amplitude ratio
  // extra slab window beyond the requested times (the halo starts past it)
  double slab_window_pad = 0.0;
  int momentum_base_nodes = 16;
  double box_pad = 4.0;
};

// Batched field evaluation: one slab build serves every request against the
// same source. Blob and superposed members are dispatched internally.
class FieldIntegrator {
 public:
  struct Request {
    Vec3 x;
    double t = 0.0;
    FieldKind kind = FieldKind::retarded;
  };

  FieldIntegrator(const AnySource &source, const FieldOptions &options);
  std::vector<FieldSample> evaluate(std::span<const Request> requests) const;

 private:
  const AnySource &source_;
  FieldOptions opt_;
};

// Spec-level single-point operations (each runs a one-request batch).
Vec3 retarded_B(const AnySource &source, const Vec3 &x, double t, const FieldOptions &opt = {});
Vec3 retarded_E(const AnySource &source, const Vec3 &x, double t, const FieldOptions &opt = {});
Vec3 advanced_B(const AnySource &source, const Vec3 &x, double t, const FieldOptions &opt = {});
Vec3 advanced_E(const AnySource &source, const Vec3 &x, double t, const FieldOptions &opt = {});

// Poynting flux through the sphere of radius R on the outgoing light front
// anchored at source time t_front: fields sampled at (R n, t_front + R/c),
// flux = (c/4pi) sum w_i R^2 (E x B).n_i. Positive = outgoing.
double poynting_flux(const AnySource &source, double R, double t_front,
                     const SphereQuadrature &sphere, const FieldOptions &opt = {});

// Coefficient of 1/R in the far-field expansion, from the moment series:
//   B_ff(n, t) = -n x (1/c^2) sum_j d^j/dt^j I_j(t) (1/c)^(j-1) / (j-1)!
// Derivatives come from polynomial fits of each series (degree j-1 when the
// series passes the degree test at fit_tol, else an oscillation-resolving
// higher degree).
Vec3 far_field_series_B(const MomentSeries &series, double t, const Units &units,
                        double fit_tol = 1e-6);

// Tabulates flux(R) and sup_n R|B| over the radii ladder, fits log-log slopes.
FluxReport radiation_scaling(const AnySource &source, double t_front,
                             std::span<const double> radii, const SphereQuadrature &sphere,
                             const FieldOptions &opt = {});

// Max relative |F_adv - F_ret| over shell samples and times; the relative
// floor guards the zero-field case.
AdvRetReport adv_ret_compare(const AnySource &source, double shell_radius,
                             std::span<const double> times, const SphereQuadrature &sphere,
                             const FieldOptions &opt = {});

}  // namespace nrlab
