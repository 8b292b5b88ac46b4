#include "nrlab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nrlab {

GaussLegendre1D gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussLegendre1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one clean-up iteration and stop
        double q0 = 1.0, q1 = x;
        for (int k = 2; k <= n; ++k) {
          const double q2 = ((2.0 * k - 1.0) * x * q1 - (k - 1.0) * q0) / k;
          q0 = q1;
          q1 = q2;
        }
        pp = n * (x * q1 - q0) / (x * x - 1.0);
        x -= q1 / pp;
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

namespace {

void fill_axis(const GaussLegendre1D &rule, double lo, double hi,
               std::vector<double> &nodes, std::vector<double> &weights) {
  const double mid = 0.5 * (lo + hi), halfw = 0.5 * (hi - lo);
  nodes.resize(rule.nodes.size());
  weights.resize(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    nodes[i] = mid + halfw * rule.nodes[i];
    weights[i] = halfw * rule.weights[i];
  }
}

}  // namespace

QuadratureGrid3D gauss_legendre_grid_aniso(int nx, int ny, int nz, const Box3 &bounds) {
  if (nx < 1 || ny < 1 || nz < 1)
    throw std::invalid_argument("gauss_legendre_grid: n_per_axis must be >= 1");
  for (int a = 0; a < 3; ++a)
    if (!(bounds.lo[a] < bounds.hi[a]))
      throw std::invalid_argument("gauss_legendre_grid: degenerate or inverted bounds");
  QuadratureGrid3D g;
  g.bounds = bounds;
  const int n[3] = {nx, ny, nz};
  for (int a = 0; a < 3; ++a) {
    const GaussLegendre1D rule = gauss_legendre(n[a]);
    fill_axis(rule, bounds.lo[a], bounds.hi[a], g.axis_nodes[a], g.axis_weights[a]);
  }
  return g;
}

QuadratureGrid3D gauss_legendre_grid(int n_per_axis, const Box3 &bounds) {
  return gauss_legendre_grid_aniso(n_per_axis, n_per_axis, n_per_axis, bounds);
}

SphereQuadrature sphere_quadrature(int order) {
  if (order < 1 || order > 64)
    throw std::invalid_argument("sphere_quadrature: supported orders are 1..64");
  SphereQuadrature q;
  q.order = order;
  const int ntheta = order + 1;
  const int nphi = 2 * (order + 1);
  const GaussLegendre1D rule = gauss_legendre(ntheta);  // in u = cos(theta)
  const double wphi = 2.0 * std::numbers::pi / nphi;
  q.directions.reserve(static_cast<std::size_t>(ntheta) * nphi);
  q.weights.reserve(static_cast<std::size_t>(ntheta) * nphi);
  for (int i = 0; i < ntheta; ++i) {
    const double u = rule.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
    for (int j = 0; j < nphi; ++j) {
      const double phi = wphi * j;
      q.directions.push_back({s * std::cos(phi), s * std::sin(phi), u});
      q.weights.push_back(rule.weights[i] * wphi);
    }
  }
  return q;
}

}  // namespace nrlab
