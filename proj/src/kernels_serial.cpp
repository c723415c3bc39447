#include <algorithm>

#include "gradflow/kernels.hpp"

namespace gradflow::kernels::serial {

void laplacian(std::span<const double> u, std::span<double> out, double h, Boundary bc) {
  const std::size_t m = u.size();
  const double inv_h2 = 1.0 / (h * h);
  for (std::size_t j = 1; j + 1 < m; ++j) out[j] = (u[j - 1] - 2.0 * u[j] + u[j + 1]) * inv_h2;
  double left = 0.0;
  double right = 0.0;
  switch (bc) {
    case Boundary::periodic: left = u[m - 1]; right = u[0]; break;
    case Boundary::dirichlet0: break;
    case Boundary::neumann0: left = u[0]; right = u[m - 1]; break;
  }
  out[0] = (left - 2.0 * u[0] + u[1]) * inv_h2;
  out[m - 1] = (u[m - 2] - 2.0 * u[m - 1] + right) * inv_h2;
}

void reaction(std::span<const double> u, const CoefficientTable& a, LeadingTerm lead,
              std::span<double> out) {
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = detail::reaction_at(u[j], a, j, lead);
}

void reaction_derivative(std::span<const double> u, const CoefficientTable& a, LeadingTerm lead,
                         std::span<double> out) {
  for (std::size_t j = 0; j < u.size(); ++j) {
    out[j] = detail::reaction_derivative_at(u[j], a, j, lead);
  }
}

void potential(std::span<const double> u, const CoefficientTable& a, LeadingTerm lead,
               std::span<double> out) {
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = detail::potential_at(u[j], a, j, lead);
}

double sum(std::span<const double> u) {
  double s = 0.0;
  for (double v : u) s += v;
  return s;
}

double dot(std::span<const double> u, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) s += u[j] * v[j];
  return s;
}

double max_abs(std::span<const double> u) {
  double m = 0.0;
  for (double v : u) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace gradflow::kernels::serial
