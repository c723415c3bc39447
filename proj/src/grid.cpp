#include "gradflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "gradflow/errors.hpp"
#include "gradflow/expr.hpp"

namespace gradflow {

namespace {

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Ghost value to the right of node M-1.
double right_ghost(std::span<const double> u, Boundary bc) {
  switch (bc) {
    case Boundary::periodic: return u.front();
    case Boundary::dirichlet0: return 0.0;
    case Boundary::neumann0: return u.back();
  }
  return 0.0;
}

double left_ghost(std::span<const double> u, Boundary bc) {
  switch (bc) {
    case Boundary::periodic: return u.back();
    case Boundary::dirichlet0: return 0.0;
    case Boundary::neumann0: return u.front();
  }
  return 0.0;
}

}  // namespace

std::string_view boundary_name(Boundary bc) {
  switch (bc) {
    case Boundary::periodic: return "periodic";
    case Boundary::dirichlet0: return "dirichlet0";
    case Boundary::neumann0: return "neumann0";
  }
  return "periodic";
}

Boundary parse_boundary(std::string_view name) {
  if (name == "periodic") return Boundary::periodic;
  if (name == "dirichlet0") return Boundary::dirichlet0;
  if (name == "neumann0") return Boundary::neumann0;
  throw ValidationError("boundary must be one of periodic, dirichlet0, neumann0 (got '" +
                        std::string(name) + "')");
}

SpatialGrid::SpatialGrid(double half_length, std::size_t points, Boundary bc)
    : half_length_(half_length), points_(points), bc_(bc), h_(0.0) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw ValidationError("box_half_length must be finite and > 0");
  }
  if (points < 8) throw ValidationError("grid_points >= 8 required");
  const double len = 2.0 * half_length;
  h_ = bc == Boundary::periodic ? len / static_cast<double>(points)
                                : len / static_cast<double>(points + 1);
}

double SpatialGrid::x(std::size_t j) const {
  const double offset = bc_ == Boundary::periodic ? 0.0 : 1.0;
  return -half_length_ + (static_cast<double>(j) + offset) * h_;
}

std::vector<double> SpatialGrid::nodes() const {
  std::vector<double> xs(points_);
  for (std::size_t j = 0; j < points_; ++j) xs[j] = x(j);
  return xs;
}

SpatialGrid SpatialGrid::refined() const {
  const std::size_t m = bc_ == Boundary::periodic ? 2 * points_ : 2 * points_ + 1;
  return SpatialGrid(half_length_, m, bc_);
}

bool SpatialGrid::operator==(const SpatialGrid& other) const {
  return half_length_ == other.half_length_ && points_ == other.points_ && bc_ == other.bc_;
}

GridPtr make_grid(double half_length, std::size_t points, Boundary bc) {
  return std::make_shared<const SpatialGrid>(half_length, points, bc);
}

Field::Field(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->size()) {
    throw ValidationError("field has " + std::to_string(values_.size()) + " values, grid has " +
                          std::to_string(grid_->size()) + " nodes");
  }
  if (!all_finite(values_)) throw RangeError("field contains non-finite values");
}

Field Field::zeros(GridPtr grid) { return constant(std::move(grid), 0.0); }

Field Field::constant(GridPtr grid, double c) {
  const std::size_t m = grid->size();
  return Field(std::move(grid), std::vector<double>(m, c));
}

Field Field::sample(GridPtr grid, const Expr& e) {
  std::vector<double> v(grid->size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = e.eval(grid->x(j));
  return Field(std::move(grid), std::move(v));
}

bool Field::same_grid(const Field& other) const {
  return grid_ == other.grid_ || *grid_ == *other.grid_;
}

Field Field::operator+(const Field& other) const {
  if (!same_grid(other)) throw GridMismatchError();
  std::vector<double> r(values_.size());
  for (std::size_t j = 0; j < r.size(); ++j) r[j] = values_[j] + other.values_[j];
  return Field(grid_, std::move(r));
}

Field Field::operator-(const Field& other) const {
  if (!same_grid(other)) throw GridMismatchError();
  std::vector<double> r(values_.size());
  for (std::size_t j = 0; j < r.size(); ++j) r[j] = values_[j] - other.values_[j];
  return Field(grid_, std::move(r));
}

Field Field::operator*(double s) const {
  std::vector<double> r(values_);
  for (double& v : r) v *= s;
  return Field(grid_, std::move(r));
}

Field laplacian(const Field& u) {
  std::vector<double> out(u.size());
  kernels::omp::laplacian(u.values(), out, u.grid().h(), u.grid().boundary());
  return Field(u.grid_ptr(), std::move(out));
}

Field gradient_sq(const Field& u, Stencil stencil) {
  const auto v = u.values();
  const std::size_t m = v.size();
  const double h = u.grid().h();
  const Boundary bc = u.grid().boundary();
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double next = j + 1 < m ? v[j + 1] : right_ghost(v, bc);
    double d = 0.0;
    if (stencil == Stencil::forward) {
      d = (next - v[j]) / h;
    } else {
      const double prev = j > 0 ? v[j - 1] : left_ghost(v, bc);
      d = (next - prev) / (2.0 * h);
    }
    out[j] = d * d;
  }
  return Field(u.grid_ptr(), std::move(out));
}

double dirichlet_form(const Field& u) {
  const auto v = u.values();
  const std::size_t m = v.size();
  const Boundary bc = u.grid().boundary();
  std::vector<double> diff;
  diff.reserve(m + 1);
  if (bc == Boundary::dirichlet0) diff.push_back(v[0]);
  for (std::size_t j = 0; j + 1 < m; ++j) diff.push_back(v[j + 1] - v[j]);
  if (bc == Boundary::periodic) diff.push_back(v[0] - v[m - 1]);
  if (bc == Boundary::dirichlet0) diff.push_back(-v[m - 1]);
  return kernels::omp::dot(diff, diff) / u.grid().h();
}

double integrate(const Field& u) { return u.grid().h() * kernels::omp::sum(u.values()); }

double inner(const Field& u, const Field& v) {
  if (!u.same_grid(v)) throw GridMismatchError();
  return u.grid().h() * kernels::omp::dot(u.values(), v.values());
}

std::vector<double> forward_difference(const Field& u, int order) {
  std::vector<double> d(u.values().begin(), u.values().end());
  const double h = u.grid().h();
  const bool periodic = u.grid().boundary() == Boundary::periodic;
  for (int k = 0; k < order; ++k) {
    const std::size_t m = d.size();
    std::vector<double> next(periodic ? m : m - 1);
    for (std::size_t j = 0; j < next.size(); ++j) next[j] = (d[(j + 1) % m] - d[j]) / h;
    d = std::move(next);
  }
  return d;
}

double sobolev_norm(const Field& u, int k, double p) {
  if (k < 0 || k > 4) throw ValidationError("sobolev_norm supports 0 <= k <= 4");
  if (!(p >= 1.0)) throw ValidationError("sobolev_norm requires p >= 1");
  const double h = u.grid().h();
  double total = 0.0;
  for (int j = 0; j <= k; ++j) {
    std::vector<double> d = forward_difference(u, j);
    for (double& v : d) v = std::pow(std::abs(v), p);
    total += std::pow(h * kernels::omp::sum(d), 1.0 / p);
  }
  return total;
}

double sup_norm(const Field& u) { return kernels::omp::max_abs(u.values()); }

double sup_distance(const Field& u, const Field& v) { return sup_norm(u - v); }

void write_field_csv(std::ostream& os, const Field& u) {
  const auto old_precision = os.precision(17);
  os << "x,u\n";
  for (std::size_t j = 0; j < u.size(); ++j) os << u.grid().x(j) << ',' << u[j] << '\n';
  os.precision(old_precision);
}

Field read_field_csv(std::istream& is, GridPtr grid) {
  std::string line;
  if (!std::getline(is, line) || line != "x,u") throw ValidationError("field CSV must start with 'x,u'");
  std::vector<double> values;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ValidationError("malformed field CSV row: " + line);
    values.push_back(std::stod(line.substr(comma + 1)));
  }
  return Field(std::move(grid), std::move(values));
}

}  // namespace gradflow
