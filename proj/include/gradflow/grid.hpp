#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "gradflow/kernels.hpp"

namespace gradflow {

class Expr;

std::string_view boundary_name(Boundary bc);
/// Throws ValidationError for anything other than periodic|dirichlet0|neumann0.
Boundary parse_boundary(std::string_view name);

/// Uniform grid on [-L/2, L/2].
///
/// periodic:          h = L/M,     x_j = -L/2 + j h,       j = 0..M-1
/// dirichlet0/neumann0: h = L/(M+1), x_j = -L/2 + (j+1) h  (interior nodes)
class SpatialGrid {
 public:
  /// Throws ValidationError unless M >= 8 and half_length > 0.
  SpatialGrid(double half_length, std::size_t points, Boundary bc);

  std::size_t size() const { return points_; }
  double h() const { return h_; }
  double half_length() const { return half_length_; }
  double length() const { return 2.0 * half_length_; }
  Boundary boundary() const { return bc_; }
  double x(std::size_t j) const;
  std::vector<double> nodes() const;

  /// Grid with h halved and nested nodes (periodic: 2M, otherwise 2M+1).
  SpatialGrid refined() const;

  bool operator==(const SpatialGrid& other) const;

 private:
  double half_length_;
  std::size_t points_;
  Boundary bc_;
  double h_;
};

using GridPtr = std::shared_ptr<const SpatialGrid>;

GridPtr make_grid(double half_length, std::size_t points, Boundary bc);

/// Samples u_j on a grid. Values are always finite: constructing a Field
/// from non-finite data throws RangeError.
class Field {
 public:
  Field(GridPtr grid, std::vector<double> values);

  static Field zeros(GridPtr grid);
  static Field constant(GridPtr grid, double c);
  /// Throws NonFiniteError if the expression is non-finite at some node.
  static Field sample(GridPtr grid, const Expr& e);

  const GridPtr& grid_ptr() const { return grid_; }
  const SpatialGrid& grid() const { return *grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }

  Field operator+(const Field& other) const;
  Field operator-(const Field& other) const;
  Field operator*(double s) const;

  bool same_grid(const Field& other) const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

inline Field operator*(double s, const Field& f) { return f * s; }

enum class Stencil { centered, forward };

/// Second central difference with the grid's boundary closure.
Field laplacian(const Field& u);

/// |∇u|² per node; forward uses (u_{j+1} - u_j)/h with the ghost closure.
Field gradient_sq(const Field& u, Stencil stencil = Stencil::centered);

/// h Σ_edges |D⁺u|², every edge of the stencil including ghost edges.
/// Satisfies <-Δ_h u, u> = dirichlet_form(u) exactly for all closures.
double dirichlet_form(const Field& u);

/// h Σ u_j.
double integrate(const Field& u);
/// h Σ u_j v_j; the inner product under which Δ_h is self-adjoint.
double inner(const Field& u, const Field& v);

/// Σ_{j<=k} (h Σ |D^j u|^p)^{1/p} with D^j the j-fold forward difference.
/// Periodic grids wrap; otherwise each order drops the last node.
/// Throws ValidationError for k > 4, k < 0 or p < 1.
double sobolev_norm(const Field& u, int k, double p);

/// j-fold divided forward difference (length shrinks on non-periodic grids).
std::vector<double> forward_difference(const Field& u, int order);

double sup_norm(const Field& u);
double sup_distance(const Field& u, const Field& v);

/// CSV with header `x,u` and 17 significant digits.
void write_field_csv(std::ostream& os, const Field& u);
/// Reads the `x,u` format back onto `grid`; throws ValidationError on mismatch.
Field read_field_csv(std::istream& is, GridPtr grid);

}  // namespace gradflow
