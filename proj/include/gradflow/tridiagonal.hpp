#pragma once

#include <span>
#include <vector>

namespace gradflow {

/// Row j reads lower[j]*x[j-1] + diag[j]*x[j] + upper[j]*x[j+1].
/// When `cyclic`, lower[0] couples to x[M-1] and upper[M-1] to x[0].
struct TridiagonalSystem {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;
  bool cyclic = false;

  std::size_t size() const { return diag.size(); }
  std::vector<double> multiply(std::span<const double> x) const;
};

inline constexpr double kMinPivot = 1e-14;

/// Thomas algorithm, or Sherman-Morrison on top of it for cyclic systems.
/// Throws SingularMatrixError when a pivot falls below kMinPivot in magnitude.
std::vector<double> solve_tridiagonal(const TridiagonalSystem& a, std::span<const double> rhs);

/// Normwise backward error ||A x - b|| / (||A|| ||x|| + ||b||), infinity norms.
double relative_residual(const TridiagonalSystem& a, std::span<const double> x,
                         std::span<const double> rhs);

}  // namespace gradflow
