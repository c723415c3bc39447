#include "gradflow/nonlinearity.hpp"

#include <cmath>

#include "gradflow/errors.hpp"

namespace gradflow {

namespace {

Field checked(const GridPtr& grid, std::vector<double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw RangeError(std::string(what) + " overflowed");
  }
  return Field(grid, std::move(values));
}

void require_grid(const Nonlinearity& nl, const Field& u) {
  if (!(*nl.grid_ptr() == u.grid())) throw GridMismatchError();
}

}  // namespace

Nonlinearity::Nonlinearity(GridPtr grid, CoefficientTable coeffs, LeadingTerm lead)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)), lead_(lead) {
  if (coeffs_.points != grid_->size() ||
      coeffs_.values.size() != static_cast<std::size_t>(coeffs_.degree) * coeffs_.points) {
    throw ValidationError("coefficient table does not match the grid");
  }
  for (double v : coeffs_.values) {
    if (!std::isfinite(v)) throw ValidationError("coefficient samples must be finite");
  }
}

Nonlinearity Nonlinearity::from_spec(const ProblemSpec& spec) {
  return from_spec(spec, spec.make_grid());
}

Nonlinearity Nonlinearity::from_spec(const ProblemSpec& spec, GridPtr grid) {
  CoefficientTable table;
  table.degree = spec.N;
  table.points = grid->size();
  table.values.reserve(static_cast<std::size_t>(spec.N) * grid->size());
  for (const Expr& e : spec.coeffs) {
    const Field a = Field::sample(grid, e);
    table.values.insert(table.values.end(), a.values().begin(), a.values().end());
  }
  return Nonlinearity(std::move(grid), std::move(table), spec.leading_term());
}

Field Nonlinearity::coefficient(int i) const {
  const double* row = coeffs_.row(i);
  return Field(grid_, std::vector<double>(row, row + coeffs_.points));
}

bool Nonlinearity::constant_coefficients() const {
  for (int i = 0; i < coeffs_.degree; ++i) {
    const double* row = coeffs_.row(i);
    const double tol = 1e-12 * std::max(1.0, std::abs(row[0]));
    for (std::size_t j = 1; j < coeffs_.points; ++j) {
      if (std::abs(row[j] - row[0]) > tol) return false;
    }
  }
  return true;
}

double Nonlinearity::scalar(double c, std::size_t j) const {
  return kernels::detail::reaction_at(c, coeffs_, j, lead_);
}

double Nonlinearity::scalar_derivative(double c, std::size_t j) const {
  return kernels::detail::reaction_derivative_at(c, coeffs_, j, lead_);
}

double Nonlinearity::scalar_potential(double c, std::size_t j) const {
  return kernels::detail::potential_at(c, coeffs_, j, lead_);
}

Nonlinearity Nonlinearity::without_leading_term() const {
  return Nonlinearity(grid_, coeffs_, LeadingTerm::none);
}

Field apply_P(const Nonlinearity& nl, const Field& u) {
  require_grid(nl, u);
  std::vector<double> out(u.size());
  kernels::omp::reaction(u.values(), nl.coefficients(), nl.leading_term(), out);
  return checked(u.grid_ptr(), std::move(out), "P(u)");
}

Field apply_dP(const Nonlinearity& nl, const Field& u) {
  require_grid(nl, u);
  std::vector<double> out(u.size());
  kernels::omp::reaction_derivative(u.values(), nl.coefficients(), nl.leading_term(), out);
  return checked(u.grid_ptr(), std::move(out), "dP/du");
}

Field potential(const Nonlinearity& nl, const Field& u) {
  require_grid(nl, u);
  std::vector<double> out(u.size());
  kernels::omp::potential(u.values(), nl.coefficients(), nl.leading_term(), out);
  return checked(u.grid_ptr(), std::move(out), "potential");
}

double reaction_ratio(const Nonlinearity& nl, const Field& u, int k, double p) {
  const double denom = sobolev_norm(u, k, p);
  if (denom == 0.0) throw RangeError("reaction_ratio: ||u||_{k,p} is zero");
  const Field shifted = apply_P(nl, u) - nl.coefficient(0);
  return sobolev_norm(shifted, k, p) / denom;
}

}  // namespace gradflow
