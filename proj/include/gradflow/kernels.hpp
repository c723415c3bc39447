#pragma once

// Data-parallel inner loops. Every kernel exists twice: `serial::` is the
// plain reference loop kept for testing, `omp::` is the OpenMP version the
// library calls. Pointwise kernels agree bit-for-bit; reductions in `omp::`
// sum fixed-size chunks in a fixed order, so their result does not depend on
// the thread count (but may differ from `serial::` in the last few ulps).

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace gradflow {

enum class Boundary { periodic, dirichlet0, neumann0 };

enum class LeadingTerm {
  power,         // -u^N
  signed_power,  // -u|u|^(N-1)
  none,          // dropped; test hook for pure diffusion
};

/// Coefficient samples a_i(x_j), row-major: row i holds a_i on the grid.
struct CoefficientTable {
  int degree = 2;
  std::size_t points = 0;
  std::vector<double> values;

  const double* row(int i) const { return values.data() + static_cast<std::size_t>(i) * points; }
};

namespace kernels {

inline constexpr std::size_t kReduceChunk = 512;
inline constexpr std::size_t kParallelThreshold = 4096;

namespace detail {

inline double ipow(double u, int n) {
  double r = 1.0;
  for (; n > 0; --n) r *= u;
  return r;
}

inline double leading(double u, int n, LeadingTerm lead) {
  switch (lead) {
    case LeadingTerm::power: return -ipow(u, n);
    case LeadingTerm::signed_power: return -u * ipow(std::abs(u), n - 1);
    case LeadingTerm::none: return 0.0;
  }
  return 0.0;
}

// P(u) at node j: leading term plus Horner over a_{N-1} .. a_0.
inline double reaction_at(double u, const CoefficientTable& a, std::size_t j, LeadingTerm lead) {
  double acc = 0.0;
  for (int i = a.degree - 1; i >= 0; --i) acc = acc * u + a.row(i)[j];
  return leading(u, a.degree, lead) + acc;
}

inline double reaction_derivative_at(double u, const CoefficientTable& a, std::size_t j,
                                     LeadingTerm lead) {
  const int n = a.degree;
  double lead_d = 0.0;
  switch (lead) {
    case LeadingTerm::power: lead_d = -n * ipow(u, n - 1); break;
    case LeadingTerm::signed_power: lead_d = -n * ipow(std::abs(u), n - 1); break;
    case LeadingTerm::none: break;
  }
  double acc = 0.0;
  for (int i = n - 1; i >= 1; --i) acc = acc * u + i * a.row(i)[j];
  return lead_d + acc;
}

// Antiderivative in u, vanishing at u = 0.
inline double potential_at(double u, const CoefficientTable& a, std::size_t j, LeadingTerm lead) {
  const int n = a.degree;
  double lead_q = 0.0;
  switch (lead) {
    case LeadingTerm::power: lead_q = -ipow(u, n + 1) / (n + 1); break;
    case LeadingTerm::signed_power: lead_q = -ipow(std::abs(u), n + 1) / (n + 1); break;
    case LeadingTerm::none: break;
  }
  double acc = 0.0;
  for (int i = n - 1; i >= 0; --i) acc = acc * u + a.row(i)[j] / (i + 1);
  return lead_q + acc * u;
}

}  // namespace detail

namespace serial {

void laplacian(std::span<const double> u, std::span<double> out, double h, Boundary bc);
void reaction(std::span<const double> u, const CoefficientTable& a, LeadingTerm lead,
              std::span<double> out);
void reaction_derivative(std::span<const double> u, const CoefficientTable& a, LeadingTerm lead,
                         std::span<double> out);
void potential(std::span<const double> u, const CoefficientTable& a, LeadingTerm lead,
               std::span<double> out);
double sum(std::span<const double> u);
double dot(std::span<const double> u, std::span<const double> v);
double max_abs(std::span<const double> u);

}  // namespace serial

namespace omp {

void laplacian(std::span<const double> u, std::span<double> out, double h, Boundary bc);
void reaction(std::span<const double> u, const CoefficientTable& a, LeadingTerm lead,
              std::span<double> out);
void reaction_derivative(std::span<const double> u, const CoefficientTable& a, LeadingTerm lead,
                         std::span<double> out);
void potential(std::span<const double> u, const CoefficientTable& a, LeadingTerm lead,
               std::span<double> out);
double sum(std::span<const double> u);
double dot(std::span<const double> u, std::span<const double> v);
double max_abs(std::span<const double> u);

}  // namespace omp

}  // namespace kernels
}  // namespace gradflow
