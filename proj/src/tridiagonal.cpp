#include "gradflow/tridiagonal.hpp"

#include <algorithm>
#include <cmath>

#include "gradflow/errors.hpp"

namespace gradflow {

namespace {

std::vector<double> thomas(std::span<const double> lower, std::span<const double> diag,
                           std::span<const double> upper, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  std::vector<double> c(n);
  std::vector<double> x(n);
  double pivot = diag[0];
  if (std::abs(pivot) < kMinPivot) throw SingularMatrixError("tridiagonal pivot below 1e-14");
  c[0] = upper[0] / pivot;
  x[0] = rhs[0] / pivot;
  for (std::size_t j = 1; j < n; ++j) {
    pivot = diag[j] - lower[j] * c[j - 1];
    if (std::abs(pivot) < kMinPivot) throw SingularMatrixError("tridiagonal pivot below 1e-14");
    c[j] = j + 1 < n ? upper[j] / pivot : 0.0;
    x[j] = (rhs[j] - lower[j] * x[j - 1]) / pivot;
  }
  for (std::size_t j = n - 1; j-- > 0;) x[j] -= c[j] * x[j + 1];
  return x;
}

}  // namespace

std::vector<double> TridiagonalSystem::multiply(std::span<const double> x) const {
  const std::size_t n = size();
  std::vector<double> y(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = diag[j] * x[j];
    if (j > 0) s += lower[j] * x[j - 1];
    if (j + 1 < n) s += upper[j] * x[j + 1];
    y[j] = s;
  }
  if (cyclic) {
    y[0] += lower[0] * x[n - 1];
    y[n - 1] += upper[n - 1] * x[0];
  }
  return y;
}

std::vector<double> solve_tridiagonal(const TridiagonalSystem& a, std::span<const double> rhs) {
  if (!a.cyclic) return thomas(a.lower, a.diag, a.upper, rhs);

  // A = B + w v^T with the corners folded into B's first and last diagonal.
  const std::size_t n = a.size();
  const double alpha = a.upper[n - 1];  // A[n-1][0]
  const double beta = a.lower[0];       // A[0][n-1]
  const double gamma = -a.diag[0];
  std::vector<double> diag(a.diag);
  diag[0] -= gamma;
  diag[n - 1] -= alpha * beta / gamma;

  std::vector<double> x = thomas(a.lower, diag, a.upper, rhs);
  std::vector<double> w(n, 0.0);
  w[0] = gamma;
  w[n - 1] = alpha;
  std::vector<double> z = thomas(a.lower, diag, a.upper, w);

  const double vx = x[0] + beta / gamma * x[n - 1];
  const double vz = z[0] + beta / gamma * z[n - 1];
  const double denom = 1.0 + vz;
  if (std::abs(denom) < kMinPivot) throw SingularMatrixError("cyclic correction is singular");
  const double f = vx / denom;
  for (std::size_t j = 0; j < n; ++j) x[j] -= f * z[j];
  return x;
}

double relative_residual(const TridiagonalSystem& a, std::span<const double> x,
                         std::span<const double> rhs) {
  const std::vector<double> ax = a.multiply(x);
  const std::size_t n = ax.size();
  double num = 0.0;
  double bnorm = 0.0;
  double xnorm = 0.0;
  double anorm = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    num = std::max(num, std::abs(ax[j] - rhs[j]));
    bnorm = std::max(bnorm, std::abs(rhs[j]));
    xnorm = std::max(xnorm, std::abs(x[j]));
    double row = std::abs(a.diag[j]);
    if (j > 0 || a.cyclic) row += std::abs(a.lower[j]);
    if (j + 1 < n || a.cyclic) row += std::abs(a.upper[j]);
    anorm = std::max(anorm, row);
  }
  const double den = anorm * xnorm + bnorm;
  return den > 0.0 ? num / den : num;
}

}  // namespace gradflow
