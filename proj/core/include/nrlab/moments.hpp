#pragma once
#include <span>
#include <string>
#include <vector>

#include "nrlab/currents.hpp"
#include "nrlab/packet_tables.hpp"

namespace nrlab {

// Sampled multipole moments of the current along a direction:
//   I_j(t) = int J(x,t) (n_hat.x)^(j-1) d3x,  j = 1..j_max.
struct MomentSeries {
  Vec3 direction{0.0, 0.0, 1.0};
  int j_max = 0;
  std::vector<double> times;
  std::vector<std::vector<Vec3>> values;  // [j-1][time index]
  std::string method;                     // "spatial" or "oracle"
};

struct DegreeEntry {
  int j = 0;
  // degree-(j-1) fit coefficients per vector component
  std::array<std::vector<double>, 3> coefficients;
  double residual = 0.0;        // RMS misfit / RMS values, all components pooled
  double dominant_omega = 0.0;  // spectral peak of the misfit
  bool pass = false;
};

struct DegreeReport {
  std::vector<DegreeEntry> entries;
  double tolerance = 0.0;
  bool pass = false;
  double max_residual = 0.0;
  double dominant_omega = 0.0;  // of the entry with the largest residual
};

// Position-space route: fixed-time tensor evaluation of J on the box, then
// weighted sums in packed-node order. Checks the boundary-leakage guard
// (|J| at the integration boundary below leak_tol of its interior peak).
MomentSeries compute_moments_spatial(const AnySource &source, const Vec3 &n_hat,
                                     std::span<const double> times, int j_max,
                                     const ClippedGrid &box, double leak_tol = 1e-10);

// Momentum-space Heisenberg oracle (j <= 3): analytic envelope derivatives
// and x(t) = x + v(p) t give polynomials in t in closed form. Independent of
// the position-space route. Supported for unboosted bump-family sources with
// tags {schrodinger, kg_plus, kg_minus, fw, canonical}.
MomentSeries compute_moments_oracle(const WaveSource &source, const Vec3 &n_hat,
                                    std::span<const double> times, int j_max);

// Fits degree (j-1) to each I_j series; pass iff every pooled residual is
// below tolerance. Requires at least j_max + 4 samples.
DegreeReport degree_test(const MomentSeries &series, double tolerance);

// Current accumulated on the packed nodes of a box at fixed time (J only).
// Used by the moments route and by the far-field series assembly.
void currents_on_grid(const AnySource &source, const ClippedGrid &box, double t,
                      std::vector<Vec3> &J_out);

}  // namespace nrlab
