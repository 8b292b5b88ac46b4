#include "nrlab/chirp_evaluator.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "nrlab/kahan.hpp"

namespace nrlab {

namespace {

const GaussLegendre1D &cached_rule(int n) {
  thread_local std::map<int, GaussLegendre1D> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_legendre(n)).first;
  return it->second;
}

// spherical Bessel helpers with small-argument series
inline double sph_j0(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}
inline double sph_j0p(double x) {  // d j0 / dx = -j1
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return -x / 3.0 + x * x2 / 30.0;
  }
  return (x * std::cos(x) - std::sin(x)) / (x * x);
}
inline double sph_j0p_over_x(double x) {  // j0'(x)/x
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return -1.0 / 3.0 + x2 / 30.0;
  }
  return sph_j0p(x) / x;
}

}  // namespace

ChirpEvaluator::ChirpEvaluator(std::shared_ptr<const MomentumAmplitude> amplitude,
                               const Dispersion &dispersion)
    : amp_(std::move(amplitude)), disp_(dispersion) {
  if (is_relativistic(disp_.kind))
    throw std::invalid_argument(
        "ChirpEvaluator: exact chirp reduction requires the quadratic dispersion");
}

ModePointEval ChirpEvaluator::eval(const Vec3 &x, double t, unsigned channels) const {
  const Units &u = amp_->units();
  const double hbar = u.hbar, m = u.m;
  const double r = amp_->support_radius();
  const Vec3 p0 = amp_->p_center();
  const Vec3 v0 = p0 / m;
  const Vec3 y = x - amp_->x_offset();
  const Vec3 z = y - v0 * t;
  const double zn = norm(z);
  const Vec3 zhat = zn > 0.0 ? z / zn : Vec3{0.0, 0.0, 1.0};

  // node count: resolve q|z|/hbar oscillation and the chirp q^2 t/(2 m hbar)
  const double osc = r * zn / hbar + r * r * std::abs(t) / (2.0 * m * hbar);
  const int n = std::max(24, static_cast<int>(osc / 2.0) + 16);
  const GaussLegendre1D &rule = cached_rule(n);

  const double alpha = t / (2.0 * m * hbar);
  const double tph = 2.0 * std::numbers::pi * hbar;
  const double measure = 4.0 * std::numbers::pi / (tph * tph * tph);

  // radial integrals assembled in one pass
  CompensatedSumC W, Wr, Wrr, Wt, Wtr;
  const bool want_grad = channels & (kGrad | kDtGrad);
  const bool want_dt = channels & (kDt | kDtGrad);
  const bool want_dtgrad = channels & kDtGrad;
  for (int i = 0; i < n; ++i) {
    const double q = 0.5 * r * (rule.nodes[i] + 1.0);
    const double w = 0.5 * r * rule.weights[i];
    const double b = amp_->envelope_radial(q);
    if (b == 0.0) continue;
    const cplx chirp = std::polar(1.0, -alpha * q * q);
    const cplx base = w * b * q * q * chirp;
    const double xi = q * zn / hbar;
    W.add(base * sph_j0(xi));
    if (want_grad) Wr.add(base * (q / hbar) * sph_j0p(xi));
    if (want_dtgrad) {
      // j0'' = -j0 - 2 j0'/xi
      const double j0pp = -sph_j0(xi) - 2.0 * sph_j0p_over_x(xi);
      Wrr.add(base * (q / hbar) * (q / hbar) * j0pp);
    }
    if (want_dt) {
      const cplx dtf(0.0, -q * q / (2.0 * m * hbar));
      Wt.add(base * dtf * sph_j0(xi));
      if (want_dtgrad) Wtr.add(base * dtf * (q / hbar) * sph_j0p(xi));
    }
  }

  const cplx Wv = measure * W.value();
  const cplx Wrv = measure * Wr.value();
  const cplx Wrrv = measure * Wrr.value();
  const cplx Wtv = measure * Wt.value();
  const cplx Wtrv = measure * Wtr.value();

  const double phi0 = (dot(p0, y) - 0.5 * norm2(p0) / m * t) / hbar;
  const cplx front = amp_->scale() * std::polar(1.0, phi0);
  const cplx ip0(0.0, 1.0 / hbar);
  const cplx mu(0.0, -0.5 * norm2(p0) / (m * hbar));  // d(phi0)/dt factor

  ModePointEval out;
  out.value = front * Wv;
  if (channels & (kGrad | kDtGrad)) {
    for (int a = 0; a < 3; ++a) out.grad[a] = front * (ip0 * p0[a] * Wv + zhat[a] * Wrv);
  }
  if (want_dt) {
    // dW/dt at fixed x: explicit t term + drift of z (-v0 . grad_z W)
    const cplx Wdot = Wtv - dot(v0, zhat) * Wrv;
    out.dt = front * (mu * Wv + Wdot);
    if (want_dtgrad) {
      // Hessian of the radial W: Wrr zhat zhat^T + (Wr/|z|)(I - zhat zhat^T)
      for (int a = 0; a < 3; ++a) {
        cplx hess_dot_v0 = 0.0;
        for (int bax = 0; bax < 3; ++bax) {
          const double zz = zhat[a] * zhat[bax];
          const double delta_ab = (a == bax) ? 1.0 : 0.0;
          const cplx H = zn > 1e-12 ? Wrrv * zz + (Wrv / zn) * (delta_ab - zz)
                                    : (a == bax ? Wrrv : cplx(0.0));
          hess_dot_v0 += H * v0[bax];
        }
        const cplx dW_a = zhat[a] * Wrv;
        const cplx dWdot_a = zhat[a] * Wtrv - hess_dot_v0;
        out.dtgrad[a] =
            front * (mu * (ip0 * p0[a] * Wv + dW_a) + ip0 * p0[a] * Wdot + dWdot_a);
      }
    }
  }
  return out;
}

}  // namespace nrlab
