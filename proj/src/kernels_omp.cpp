#include <algorithm>

#include "gradflow/kernels.hpp"

namespace gradflow::kernels::omp {

namespace {

using Index = std::ptrdiff_t;

// Partial sums over fixed chunks, combined left to right.
template <class Term>
double chunked_sum(std::size_t n, Term term) {
  if (n < kParallelThreshold) {
    double total = 0.0;
    for (std::size_t lo = 0; lo < n; lo += kReduceChunk) {
      const std::size_t hi = std::min(n, lo + kReduceChunk);
      double s = 0.0;
      for (std::size_t j = lo; j < hi; ++j) s += term(j);
      total += s;
    }
    return total;
  }
  const Index chunks = static_cast<Index>((n + kReduceChunk - 1) / kReduceChunk);
  std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (Index c = 0; c < chunks; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kReduceChunk;
    const std::size_t hi = std::min(n, lo + kReduceChunk);
    double s = 0.0;
    for (std::size_t j = lo; j < hi; ++j) s += term(j);
    partial[static_cast<std::size_t>(c)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace

void laplacian(std::span<const double> u, std::span<double> out, double h, Boundary bc) {
  if (u.size() < kParallelThreshold) return serial::laplacian(u, out, h, bc);
  const Index m = static_cast<Index>(u.size());
  const double inv_h2 = 1.0 / (h * h);
#pragma omp parallel for schedule(static) if (u.size() >= kParallelThreshold)
  for (Index j = 1; j < m - 1; ++j) out[j] = (u[j - 1] - 2.0 * u[j] + u[j + 1]) * inv_h2;
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
  if (u.size() < kParallelThreshold) return serial::reaction(u, a, lead, out);
  const Index m = static_cast<Index>(u.size());
#pragma omp parallel for schedule(static) if (u.size() >= kParallelThreshold)
  for (Index j = 0; j < m; ++j) {
    out[j] = detail::reaction_at(u[j], a, static_cast<std::size_t>(j), lead);
  }
}

void reaction_derivative(std::span<const double> u, const CoefficientTable& a, LeadingTerm lead,
                         std::span<double> out) {
  if (u.size() < kParallelThreshold) return serial::reaction_derivative(u, a, lead, out);
  const Index m = static_cast<Index>(u.size());
#pragma omp parallel for schedule(static) if (u.size() >= kParallelThreshold)
  for (Index j = 0; j < m; ++j) {
    out[j] = detail::reaction_derivative_at(u[j], a, static_cast<std::size_t>(j), lead);
  }
}

void potential(std::span<const double> u, const CoefficientTable& a, LeadingTerm lead,
               std::span<double> out) {
  if (u.size() < kParallelThreshold) return serial::potential(u, a, lead, out);
  const Index m = static_cast<Index>(u.size());
#pragma omp parallel for schedule(static) if (u.size() >= kParallelThreshold)
  for (Index j = 0; j < m; ++j) {
    out[j] = detail::potential_at(u[j], a, static_cast<std::size_t>(j), lead);
  }
}

double sum(std::span<const double> u) {
  return chunked_sum(u.size(), [&](std::size_t j) { return u[j]; });
}

double dot(std::span<const double> u, std::span<const double> v) {
  return chunked_sum(u.size(), [&](std::size_t j) { return u[j] * v[j]; });
}

double max_abs(std::span<const double> u) {
  if (u.size() < kParallelThreshold) return serial::max_abs(u);
  const Index m = static_cast<Index>(u.size());
  double best = 0.0;
#pragma omp parallel for reduction(max : best) schedule(static) if (u.size() >= kParallelThreshold)
  for (Index j = 0; j < m; ++j) best = std::max(best, std::abs(u[j]));
  return best;
}

}  // namespace gradflow::kernels::omp
