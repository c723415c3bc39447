#include "gradflow/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gradflow {

namespace {

std::vector<double> trig_modes(const SpatialGrid& grid, Sampler& rng, int modes) {
  std::vector<double> u(grid.size(), 0.0);
  const double k0 = 2.0 * std::numbers::pi / grid.length();
  for (int m = 1; m <= modes; ++m) {
    const double amp = rng.uniform(-1.0, 1.0) / m;
    const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    for (std::size_t j = 0; j < u.size(); ++j) u[j] += amp * std::sin(k0 * m * grid.x(j) + phase);
  }
  return u;
}

}  // namespace

Field random_smooth_field(const GridPtr& grid, Sampler& rng, int k, double bound, int modes) {
  std::vector<double> u = trig_modes(*grid, rng, modes);
  const double offset = rng.uniform(-1.0, 1.0);
  for (double& v : u) v += offset;
  Field f(grid, u);
  double scale = 0.0;
  for (int j = 0; j <= k; ++j) {
    for (double d : forward_difference(f, j)) scale = std::max(scale, std::abs(d));
  }
  const double factor = bound * rng.uniform(0.05, 1.0) / scale;
  return f * factor;
}

Field random_initial_data(const GridPtr& grid, Sampler& rng, double lo, double hi, double wiggle,
                          int modes) {
  std::vector<double> u = trig_modes(*grid, rng, modes);
  const double mean = rng.uniform(lo, hi);
  double harmonic = 0.0;
  for (int m = 1; m <= modes; ++m) harmonic += 1.0 / m;
  for (double& v : u) v = mean + wiggle * v / harmonic;
  return Field(grid, std::move(u));
}

}  // namespace gradflow
