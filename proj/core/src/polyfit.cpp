#include "nrlab/polyfit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "nrlab/kahan.hpp"

namespace nrlab {

namespace {

// Legendre P_k(u), k = 0..deg, at one point.
void legendre_row(double u, int deg, std::vector<double> &row) {
  row.resize(deg + 1);
  row[0] = 1.0;
  if (deg >= 1) row[1] = u;
  for (int k = 2; k <= deg; ++k)
    row[k] = ((2.0 * k - 1.0) * u * row[k - 1] - (k - 1.0) * row[k - 2]) / k;
}

}  // namespace

PolyFit polyfit_residual(std::span<const double> times, std::span<const double> values,
                         int degree) {
  if (degree < 0) throw std::invalid_argument("polyfit_residual: degree must be >= 0");
  if (times.size() != values.size())
    throw std::invalid_argument("polyfit_residual: times/values size mismatch");
  const int m = static_cast<int>(times.size());
  std::set<double> distinct(times.begin(), times.end());
  if (static_cast<int>(distinct.size()) < degree + 2)
    throw std::invalid_argument("polyfit_residual: need at least degree+2 distinct times");

  PolyFit out;
  out.coefficients.assign(degree + 1, 0.0);
  out.misfit.assign(m, 0.0);

  CompensatedSum rms_acc;
  for (double v : values) rms_acc.add(v * v);
  const double rms_values = std::sqrt(rms_acc.value() / m);
  if (rms_values == 0.0) return out;  // all-zero input: zero fit, zero residual

  const double tmin = *distinct.begin(), tmax = *distinct.rbegin();
  const double mid = 0.5 * (tmin + tmax), halfw = 0.5 * (tmax - tmin);

  // Normal equations in the Legendre basis on u = (t - mid)/halfw.
  const int n = degree + 1;
  std::vector<long double> ata(static_cast<std::size_t>(n) * n, 0.0L);
  std::vector<long double> atb(n, 0.0L);
  std::vector<double> row;
  for (int i = 0; i < m; ++i) {
    legendre_row((times[i] - mid) / halfw, degree, row);
    for (int a = 0; a < n; ++a) {
      atb[a] += static_cast<long double>(row[a]) * values[i];
      for (int b = a; b < n; ++b) ata[a * n + b] += static_cast<long double>(row[a]) * row[b];
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < a; ++b) ata[a * n + b] = ata[b * n + a];

  // Cholesky solve.
  std::vector<long double> L(static_cast<std::size_t>(n) * n, 0.0L);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b <= a; ++b) {
      long double s = ata[a * n + b];
      for (int k = 0; k < b; ++k) s -= L[a * n + k] * L[b * n + k];
      if (a == b) {
        if (s <= 0.0L) throw std::invalid_argument("polyfit_residual: degenerate time set");
        L[a * n + a] = std::sqrt(s);
      } else {
        L[a * n + b] = s / L[b * n + b];
      }
    }
  }
  std::vector<long double> y(n), c(n);
  for (int a = 0; a < n; ++a) {
    long double s = atb[a];
    for (int k = 0; k < a; ++k) s -= L[a * n + k] * y[k];
    y[a] = s / L[a * n + a];
  }
  for (int a = n - 1; a >= 0; --a) {
    long double s = y[a];
    for (int k = a + 1; k < n; ++k) s -= L[k * n + a] * c[k];
    c[a] = s / L[a * n + a];
  }

  // Misfit and residual.
  CompensatedSum mis_acc;
  for (int i = 0; i < m; ++i) {
    legendre_row((times[i] - mid) / halfw, degree, row);
    long double fit = 0.0L;
    for (int a = 0; a < n; ++a) fit += c[a] * row[a];
    out.misfit[i] = values[i] - static_cast<double>(fit);
    mis_acc.add(out.misfit[i] * out.misfit[i]);
  }
  out.relative_residual = std::sqrt(mis_acc.value() / m) / rms_values;

  // Convert Legendre-in-u coefficients to monomials in t.
  // First Legendre -> monomial in u.
  std::vector<std::vector<long double>> leg(n);
  leg[0] = {1.0L};
  if (n > 1) leg[1] = {0.0L, 1.0L};
  for (int k = 2; k < n; ++k) {
    leg[k].assign(k + 1, 0.0L);
    for (int j = 0; j < k; ++j) leg[k][j + 1] += (2.0L * k - 1.0L) / k * leg[k - 1][j];
    for (std::size_t j = 0; j < leg[k - 2].size(); ++j)
      leg[k][j] -= (k - 1.0L) / k * leg[k - 2][j];
  }
  std::vector<long double> mono_u(n, 0.0L);
  for (int k = 0; k < n; ++k)
    for (std::size_t j = 0; j < leg[k].size(); ++j) mono_u[j] += c[k] * leg[k][j];
  // Then u = (t - mid)/halfw -> monomial in t via binomial expansion.
  std::vector<long double> mono_t(n, 0.0L);
  for (int j = 0; j < n; ++j) {
    // mono_u[j] * ((t - mid)/halfw)^j
    long double binom = 1.0L;
    for (int i = 0; i <= j; ++i) {
      // t^i * (-mid)^(j-i) * C(j,i) / halfw^j
      mono_t[i] += mono_u[j] * binom * std::pow(static_cast<long double>(-mid), j - i) /
                   std::pow(static_cast<long double>(halfw), j);
      binom = binom * (j - i) / (i + 1.0L);
    }
  }
  for (int i = 0; i < n; ++i) out.coefficients[i] = static_cast<double>(mono_t[i]);
  return out;
}

double polyfit_eval(std::span<const double> coefficients, double t) {
  double acc = 0.0;
  for (std::size_t k = coefficients.size(); k-- > 0;) acc = acc * t + coefficients[k];
  return acc;
}

}  // namespace nrlab
