#pragma once
#include <array>
#include <complex>

#include "nrlab/units.hpp"
#include "nrlab/vec3.hpp"

namespace nrlab {

using cplx = std::complex<double>;
using Spinor4 = std::array<cplx, 4>;
using Mat4 = std::array<std::array<cplx, 4>, 4>;

// Dirac-Pauli representation: alpha_i = [[0, sigma_i], [sigma_i, 0]],
// beta = diag(1, 1, -1, -1).
Mat4 dirac_alpha(int i);
Mat4 dirac_beta();

// H(p) = c alpha.p + beta m c^2
Mat4 dirac_hamiltonian(const Vec3 &p, const Units &u);

// Energy projectors (1 +- H/E)/2 with E = c sqrt(p^2 + m^2 c^2).
Mat4 dirac_projector(const Vec3 &p, const Units &u, int sign);

// Free-particle Foldy-Wouthuysen matrix
//   U(p) = (E + m c^2 + c beta alpha.p) / sqrt(2 E (E + m c^2))
// Unitary; maps positive-energy momentum spinors to upper-block-only form.
Mat4 fw_matrix(const Vec3 &p, const Units &u);

Spinor4 apply(const Mat4 &m, const Spinor4 &s);
Mat4 matmul(const Mat4 &a, const Mat4 &b);

// psi_dag (M psi)
cplx bilinear(const Spinor4 &psi, const Mat4 &m, const Spinor4 &phi);

// Positive-energy eigenvector u_+(p, chi) = (E + H) seed / normalization for a
// two-spinor seed chi embedded in the upper block. Normalized to |u| = 1.
Spinor4 positive_energy_spinor(const Vec3 &p, const Units &u, const std::array<cplx, 2> &chi);

}  // namespace nrlab
