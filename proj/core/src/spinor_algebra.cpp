#include "nrlab/spinor_algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace nrlab {

namespace {
constexpr cplx I{0.0, 1.0};

Mat4 zero() {
  Mat4 m{};
  return m;
}
}  // namespace

Mat4 dirac_alpha(int i) {
  Mat4 m = zero();
  switch (i) {
    case 0:  // sigma_x
      m[0][3] = 1.0; m[1][2] = 1.0; m[2][1] = 1.0; m[3][0] = 1.0;
      break;
    case 1:  // sigma_y
      m[0][3] = -I; m[1][2] = I; m[2][1] = -I; m[3][0] = I;
      break;
    case 2:  // sigma_z
      m[0][2] = 1.0; m[1][3] = -1.0; m[2][0] = 1.0; m[3][1] = -1.0;
      break;
    default:
      throw std::invalid_argument("dirac_alpha: axis must be 0, 1, 2");
  }
  return m;
}

Mat4 dirac_beta() {
  Mat4 m = zero();
  m[0][0] = 1.0;
  m[1][1] = 1.0;
  m[2][2] = -1.0;
  m[3][3] = -1.0;
  return m;
}

Mat4 dirac_hamiltonian(const Vec3 &p, const Units &u) {
  Mat4 h = zero();
  const double mc2 = u.m * u.c * u.c;
  for (int i = 0; i < 3; ++i) {
    const Mat4 a = dirac_alpha(i);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) h[r][c] += u.c * p[i] * a[r][c];
  }
  const Mat4 b = dirac_beta();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) h[r][c] += mc2 * b[r][c];
  return h;
}

Mat4 dirac_projector(const Vec3 &p, const Units &u, int sign) {
  const double mc = u.m * u.c;
  const double E = u.c * std::sqrt(norm2(p) + mc * mc);
  const Mat4 h = dirac_hamiltonian(p, u);
  Mat4 m = zero();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) m[r][c] = (sign > 0 ? 1.0 : -1.0) * h[r][c] / (2.0 * E);
    m[r][r] += 0.5;
  }
  return m;
}

Mat4 fw_matrix(const Vec3 &p, const Units &u) {
  const double mc = u.m * u.c;
  const double mc2 = mc * u.c;
  const double E = u.c * std::sqrt(norm2(p) + mc * mc);
  const double denom = std::sqrt(2.0 * E * (E + mc2));
  // beta alpha_i in Dirac-Pauli: [[0, sigma], [-sigma, 0]]
  Mat4 m = zero();
  for (int r = 0; r < 4; ++r) m[r][r] = (E + mc2) / denom;
  for (int i = 0; i < 3; ++i) {
    const Mat4 a = dirac_alpha(i);
    const Mat4 b = dirac_beta();
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        for (int k = 0; k < 4; ++k)
          m[r][c] += u.c * p[i] * b[r][k] * a[k][c] / denom;
  }
  return m;
}

Spinor4 apply(const Mat4 &m, const Spinor4 &s) {
  Spinor4 out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[r] += m[r][c] * s[c];
  return out;
}

Mat4 matmul(const Mat4 &a, const Mat4 &b) {
  Mat4 out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      for (int k = 0; k < 4; ++k) out[r][c] += a[r][k] * b[k][c];
  return out;
}

cplx bilinear(const Spinor4 &psi, const Mat4 &m, const Spinor4 &phi) {
  cplx acc = 0.0;
  for (int r = 0; r < 4; ++r) {
    cplx row = 0.0;
    for (int c = 0; c < 4; ++c) row += m[r][c] * phi[c];
    acc += std::conj(psi[r]) * row;
  }
  return acc;
}

Spinor4 positive_energy_spinor(const Vec3 &p, const Units &u, const std::array<cplx, 2> &chi) {
  const Spinor4 seed{chi[0], chi[1], 0.0, 0.0};
  const Mat4 proj = dirac_projector(p, u, +1);
  Spinor4 v = apply(proj, seed);
  double n2 = 0.0;
  for (const cplx &c : v) n2 += std::norm(c);
  if (n2 <= 0.0) throw std::invalid_argument("positive_energy_spinor: null projection");
  const double inv = 1.0 / std::sqrt(n2);
  for (cplx &c : v) c *= inv;
  return v;
}

}  // namespace nrlab
