#include "nrlab/amplitude.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nrlab/kahan.hpp"

namespace nrlab {

MomentumAmplitude::MomentumAmplitude(const Vec3 &p_center, double support_radius,
                                     double smoothness, const Vec3 &x_offset,
                                     const Units &units, double band_cap)
    : p_center_(p_center),
      radius_(support_radius),
      smoothness_(smoothness),
      x_offset_(x_offset),
      units_(units),
      band_cap_(band_cap),
      bump_{smoothness} {
  units_.validate();
  if (!(support_radius > 0.0))
    throw std::invalid_argument("MomentumAmplitude: support_radius must be positive");
  if (!(smoothness > 0.0))
    throw std::invalid_argument("MomentumAmplitude: smoothness exponent must be positive");
  if (!(band_cap > 0.0) || norm(p_center) + support_radius >= band_cap)
    throw std::invalid_argument(
        "MomentumAmplitude: momentum support violates the band limit |p_center| + r < p_max");

  // N from (4 pi / (2 pi hbar)^3) N^2 r^3 int_0^1 b(v)^2 v^2 dv = 1.
  const GaussLegendre1D rule = gauss_legendre(200);
  CompensatedSum acc;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = 0.5 * (rule.nodes[i] + 1.0);
    const double w = 0.5 * rule.weights[i];
    const double b = bump_.value(v);
    acc.add(w * b * b * v * v);
  }
  const double two_pi_hbar = 2.0 * std::numbers::pi * units_.hbar;
  const double measure = 4.0 * std::numbers::pi / (two_pi_hbar * two_pi_hbar * two_pi_hbar);
  norm_const_ = 1.0 / std::sqrt(measure * radius_ * radius_ * radius_ * acc.value());
}

cplx MomentumAmplitude::value(const Vec3 &p) const {
  const double f = envelope_value(p);
  if (f == 0.0) return 0.0;
  const double phase = -dot(p, x_offset_) / units_.hbar;
  return scale_ * f * std::polar(1.0, phase);
}

Box3 MomentumAmplitude::support_box() const {
  const Vec3 r{radius_, radius_, radius_};
  return {p_center_ - r, p_center_ + r};
}

double MomentumAmplitude::envelope_value(const Vec3 &p) const {
  const double u = norm(p - p_center_) / radius_;
  if (u >= 1.0) return 0.0;
  return norm_const_ * bump_.value(u);
}

double MomentumAmplitude::envelope_radial(double k) const {
  const double u = k / radius_;
  if (u >= 1.0) return 0.0;
  return norm_const_ * bump_.value(u);
}

double MomentumAmplitude::envelope_radial_d1(double k) const {
  const double u = k / radius_;
  if (u >= 1.0) return 0.0;
  return norm_const_ * bump_.d1(u) / radius_;
}

Vec3 MomentumAmplitude::envelope_grad(const Vec3 &p) const {
  const Vec3 d = p - p_center_;
  const double u = norm(d) / radius_;
  if (u >= 1.0) return {0.0, 0.0, 0.0};
  // grad f = N (b'(u)/u) (p - p_center) / r^2; b'(u)/u -> -2s e^-1 at u -> 0.
  double h;
  if (u < 1e-8) {
    h = -2.0 * smoothness_ * std::exp(-1.0);
  } else {
    h = bump_.d1(u) / u;
  }
  return (norm_const_ * h / (radius_ * radius_)) * d;
}

double MomentumAmplitude::envelope_dir2(const Vec3 &p, const Vec3 &n) const {
  const Vec3 d = p - p_center_;
  const double dn = norm(d);
  const double u = dn / radius_;
  if (u >= 1.0) return 0.0;
  double h;
  if (u < 1e-8) {
    h = -2.0 * smoothness_ * std::exp(-1.0);
    return norm_const_ * h / (radius_ * radius_) * norm2(n);
  }
  h = bump_.d1(u) / u;
  const double b2 = bump_.d2(u);
  const double cu = dot(d, n) / dn;  // cos between d and n, |n| folded below
  // n^T H n = N [ h |n|^2 + (b'' - h) (d.n)^2/|d|^2 ] / r^2
  return norm_const_ * (h * norm2(n) + (b2 - h) * cu * cu * norm2(n)) / (radius_ * radius_);
}

double MomentumAmplitude::position_rms() const {
  // <x^2> = int |grad psi~|^2 / int |psi~|^2 * hbar^2 (x_offset drops out of
  // the width). Radial reduction as in the normalization integral.
  const GaussLegendre1D rule = gauss_legendre(400);
  CompensatedSum num, den;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = 0.5 * (rule.nodes[i] + 1.0);
    const double w = 0.5 * rule.weights[i];
    const double b = bump_.value(v);
    const double db = bump_.d1(v) / radius_;
    num.add(w * v * v * db * db);
    den.add(w * v * v * b * b);
  }
  const double x2 = units_.hbar * units_.hbar * num.value() / den.value();
  return std::sqrt(x2 / 3.0);
}

double MomentumAmplitude::tail_radius(double amp_ratio) const {
  // radial position profile F(x) = (1/(2 pi^2 x)) int_0^r k sin(kx/hbar) b dk
  // (hbar-scaled); scan log-spaced x, envelope = running max from the right.
  const GaussLegendre1D rule = gauss_legendre(1200);
  std::vector<double> k(rule.nodes.size()), wk(rule.nodes.size()), b(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    k[i] = 0.5 * radius_ * (rule.nodes[i] + 1.0);
    wk[i] = 0.5 * radius_ * rule.weights[i];
    b[i] = bump_.value(k[i] / radius_);
  }
  double f0 = 0.0;  // F(0) = int k^2 b dk (measure constants cancel in ratios)
  for (std::size_t i = 0; i < k.size(); ++i) f0 += wk[i] * k[i] * k[i] * b[i];

  const int nscan = 1600;
  const double x_lo = 0.5 * units_.hbar / radius_;
  const double x_hi = 40000.0 * units_.hbar / radius_;
  std::vector<double> xs(nscan), prof(nscan);
  for (int i = 0; i < nscan; ++i) {
    xs[i] = x_lo * std::pow(x_hi / x_lo, double(i) / (nscan - 1));
    double acc = 0.0;
    for (std::size_t j = 0; j < k.size(); ++j)
      acc += wk[j] * k[j] * std::sin(k[j] * xs[i] / units_.hbar) * b[j];
    prof[i] = std::abs(acc * units_.hbar / xs[i]);
  }
  // envelope from the right
  for (int i = nscan - 2; i >= 0; --i) prof[i] = std::max(prof[i], prof[i + 1]);
  for (int i = 0; i < nscan; ++i)
    if (prof[i] < amp_ratio * f0) return xs[i];
  return x_hi;
}

BoostedAmplitude::BoostedAmplitude(std::shared_ptr<const AmplitudeBase> base,
                                   const Vec3 &velocity, const Units &units)
    : base_(std::move(base)), velocity_(velocity), units_(units) {
  const double beta2 = norm2(velocity_) / (units_.c * units_.c);
  if (beta2 >= 1.0) throw std::invalid_argument("BoostedAmplitude: |v| must be < c");
  gamma_ = 1.0 / std::sqrt(1.0 - beta2);

  // Bounding box of the boosted support: push the base support-box corners and
  // face/edge samples through the forward boost.
  const Box3 b = base_->support_box();
  Vec3 lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
  double outer = 0.0;
  const double mc = units_.m * units_.c;
  const int N = 12;
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j)
      for (int k = 0; k <= N; ++k) {
        const Vec3 p{b.lo.x + (b.hi.x - b.lo.x) * i / N, b.lo.y + (b.hi.y - b.lo.y) * j / N,
                     b.lo.z + (b.hi.z - b.lo.z) * k / N};
        const double E = units_.c * std::sqrt(norm2(p) + mc * mc);
        Vec3 pp = p;
        if (norm2(velocity_) > 0.0) {
          const Vec3 vhat = normalized(velocity_);
          const double pl = dot(p, vhat);
          const double pl2 = gamma_ * (pl + norm(velocity_) * E / (units_.c * units_.c));
          pp = p + (pl2 - pl) * vhat;
        }
        for (int a = 0; a < 3; ++a) {
          lo[a] = std::min(lo[a], pp[a]);
          hi[a] = std::max(hi[a], pp[a]);
        }
        outer = std::max(outer, norm(pp));
      }
  const double margin = 1e-9 * (1.0 + outer);
  support_box_ = {lo - Vec3{margin, margin, margin}, hi + Vec3{margin, margin, margin}};
  outer_radius_ = outer + margin;
}

Vec3 BoostedAmplitude::inverse_boost(const Vec3 &p_prime) const {
  if (norm2(velocity_) == 0.0) return p_prime;
  const double mc = units_.m * units_.c;
  const double Ep = units_.c * std::sqrt(norm2(p_prime) + mc * mc);
  const Vec3 vhat = normalized(velocity_);
  const double pl = dot(p_prime, vhat);
  const double pl_back = gamma_ * (pl - norm(velocity_) * Ep / (units_.c * units_.c));
  return p_prime + (pl_back - pl) * vhat;
}

cplx BoostedAmplitude::value(const Vec3 &p_prime) const {
  const Vec3 p = inverse_boost(p_prime);
  const cplx base = base_->value(p);
  if (base == cplx(0.0)) return 0.0;
  const double mc = units_.m * units_.c;
  const double E = std::sqrt(norm2(p) + mc * mc);
  const double Ep = std::sqrt(norm2(p_prime) + mc * mc);
  return std::sqrt(E / Ep) * base;
}

}  // namespace nrlab
