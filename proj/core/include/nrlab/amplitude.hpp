#pragma once
#include <complex>
#include <memory>

#include "nrlab/envelope.hpp"
#include "nrlab/quadrature.hpp"
#include "nrlab/units.hpp"
#include "nrlab/vec3.hpp"

namespace nrlab {

using cplx = std::complex<double>;

// Momentum-space amplitude evaluable at any p. Implementations must be smooth
// with compact support inside support_box().
class AmplitudeBase {
 public:
  virtual ~AmplitudeBase() = default;
  virtual cplx value(const Vec3 &p) const = 0;
  virtual Box3 support_box() const = 0;
  // max |p| over the support (band limit actually occupied)
  virtual double support_outer_radius() const = 0;
};

// The compactly supported radial bump family
//   psi~(p) = scale * N * b(|p - p_center| / r) * exp(-i p . x_offset / hbar)
// with b the BumpEnvelope profile. N normalizes int |psi~|^2 d3p/(2 pi hbar)^3
// to 1 for unit scale.
class MomentumAmplitude : public AmplitudeBase {
 public:
  // band_cap: enforced bound on |p_center| + r (Schrodinger: (1-eps) m c;
  // relativistic: any finite cap chosen by the source).
  MomentumAmplitude(const Vec3 &p_center, double support_radius, double smoothness,
                    const Vec3 &x_offset, const Units &units, double band_cap);

  cplx value(const Vec3 &p) const override;
  Box3 support_box() const override;
  double support_outer_radius() const override { return norm(p_center_) + radius_; }

  // Real envelope f(p) = N b(u) and its analytic derivatives (the moment
  // oracle needs them; x_offset and scale enter there separately).
  double envelope_value(const Vec3 &p) const;
  Vec3 envelope_grad(const Vec3 &p) const;
  double envelope_dir2(const Vec3 &p, const Vec3 &n) const;  // n^T Hess(f) n
  // radial profile of the envelope in k = |p - p_center|
  double envelope_radial(double k) const;
  double envelope_radial_d1(double k) const;

  const Vec3 &p_center() const { return p_center_; }
  double support_radius() const { return radius_; }
  double smoothness() const { return smoothness_; }
  const Vec3 &x_offset() const { return x_offset_; }
  double normalization() const { return norm_const_; }
  double band_cap() const { return band_cap_; }
  const Units &units() const { return units_; }
  cplx scale() const { return scale_; }
  void set_scale(cplx s) { scale_ = s; }

  // RMS position width per axis of |psi(x,0)|^2 (hbar / momentum spread).
  double position_rms() const;

  // Radius beyond which the position-space envelope |psi(x,0)| stays below
  // amp_ratio times its peak (envelope of the oscillatory radial profile).
  double tail_radius(double amp_ratio) const;

 private:
  Vec3 p_center_;
  double radius_;
  double smoothness_;
  Vec3 x_offset_;
  Units units_;
  double band_cap_;
  double norm_const_ = 1.0;
  cplx scale_ = 1.0;
  BumpEnvelope bump_;
};

// Lorentz-boosted amplitude: psi~'(p') = sqrt(E(p)/E(p')) psi~(p) with p the
// inverse boost of p' on the mass shell. Exact norm preservation.
class BoostedAmplitude : public AmplitudeBase {
 public:
  BoostedAmplitude(std::shared_ptr<const AmplitudeBase> base, const Vec3 &velocity,
                   const Units &units);

  cplx value(const Vec3 &p_prime) const override;
  Box3 support_box() const override { return support_box_; }
  double support_outer_radius() const override { return outer_radius_; }

  const Vec3 &velocity() const { return velocity_; }
  std::shared_ptr<const AmplitudeBase> base() const { return base_; }

 private:
  std::shared_ptr<const AmplitudeBase> base_;
  Vec3 velocity_;
  Units units_;
  double gamma_;
  Box3 support_box_;
  double outer_radius_;

  Vec3 inverse_boost(const Vec3 &p_prime) const;
};

}  // namespace nrlab
