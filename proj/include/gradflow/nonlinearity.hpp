#pragma once

#include "gradflow/grid.hpp"
#include "gradflow/problem.hpp"

namespace gradflow {

/// P(u) = lead(u) + Σ_{i<N} a_i(x) u^i with the coefficients sampled once on
/// the grid; the sampled table is the only place expressions meet the hot loop.
class Nonlinearity {
 public:
  Nonlinearity(GridPtr grid, CoefficientTable coeffs, LeadingTerm lead);

  static Nonlinearity from_spec(const ProblemSpec& spec);
  static Nonlinearity from_spec(const ProblemSpec& spec, GridPtr grid);

  const GridPtr& grid_ptr() const { return grid_; }
  int degree() const { return coeffs_.degree; }
  LeadingTerm leading_term() const { return lead_; }
  const CoefficientTable& coefficients() const { return coeffs_; }
  Field coefficient(int i) const;
  /// True when every a_i is constant across the grid.
  bool constant_coefficients() const;

  /// Scalar polynomial p(c) using the coefficients at node j.
  double scalar(double c, std::size_t j = 0) const;
  double scalar_derivative(double c, std::size_t j = 0) const;
  double scalar_potential(double c, std::size_t j = 0) const;

  /// Same nonlinearity with the leading term dropped (pure-diffusion hook).
  Nonlinearity without_leading_term() const;

 private:
  GridPtr grid_;
  CoefficientTable coeffs_;
  LeadingTerm lead_;
};

/// Pointwise P(u). Throws RangeError if the result overflows.
Field apply_P(const Nonlinearity& nl, const Field& u);
/// Pointwise ∂P/∂u.
Field apply_dP(const Nonlinearity& nl, const Field& u);
/// Pointwise antiderivative Q with Q' = P and Q(0) = 0.
Field potential(const Nonlinearity& nl, const Field& u);

/// ||P(u) - a_0||_{k,p} / ||u||_{k,p}. Throws RangeError on the zero field.
double reaction_ratio(const Nonlinearity& nl, const Field& u, int k, double p);

}  // namespace gradflow
