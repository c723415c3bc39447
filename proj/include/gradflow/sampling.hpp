#pragma once

#include <cstdint>
#include <random>

#include "gradflow/grid.hpp"

namespace gradflow {

/// Seeded generator for the randomized suites. Uniform draws are built from
/// the raw 64-bit output so fixtures do not depend on the standard library's
/// distribution implementations.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// Random trigonometric polynomial with `modes` box-periodic modes, scaled so
/// that sup |D^j u| <= bound for every forward-difference order j <= k, then
/// multiplied by a uniform factor in (0, 1].
Field random_smooth_field(const GridPtr& grid, Sampler& rng, int k, double bound, int modes = 3);

/// Smooth random initial data: a uniform mean in [lo, hi] plus low modes of
/// amplitude at most `wiggle`.
Field random_initial_data(const GridPtr& grid, Sampler& rng, double lo, double hi, double wiggle,
                          int modes = 3);

}  // namespace gradflow
