#include <doctest.h>

#include <cmath>

#include "gradflow/errors.hpp"
#include "gradflow/nonlinearity.hpp"
#include "gradflow/problem.hpp"
#include "gradflow/sampling.hpp"

using namespace gradflow;

namespace {

Nonlinearity make(const char* json) { return Nonlinearity::from_spec(load_spec(json)); }

std::vector<double> values_of(const Field& f) { return {f.values().begin(), f.values().end()}; }

// Independent scalar Horner evaluation of -c^N + Σ a_i c^i.
double scalar_p(const std::vector<double>& a, int n, double c) {
  double acc = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * c + *it;
  return acc - std::pow(c, n);
}

}  // namespace

TEST_CASE("apply_P examples") {
  const Nonlinearity fisher = make(R"j({"N": 2, "coeffs": ["0", "1"]})j");
  for (double v : values_of(apply_P(fisher, Field::zeros(fisher.grid_ptr())))) CHECK(v == 0.0);
  for (double v : values_of(apply_P(fisher, Field::constant(fisher.grid_ptr(), 1.0)))) CHECK(v == 0.0);
  const Nonlinearity cube = make(R"j({"N": 3, "coeffs": [0, 0, 0]})j");
  for (double v : values_of(apply_P(cube, Field::constant(cube.grid_ptr(), 2.0)))) CHECK(v == -8.0);
  const Nonlinearity sgn = make(R"j({"N": 2, "coeffs": [0, 0], "signed_power": true})j");
  for (double v : values_of(apply_P(sgn, Field::constant(sgn.grid_ptr(), -3.0)))) CHECK(v == 9.0);
  for (double v : values_of(apply_P(sgn, Field::constant(sgn.grid_ptr(), 3.0)))) CHECK(v == -9.0);
  const Nonlinearity big = make(R"j({"N": 8, "coeffs": [0, 0, 0, 0, 0, 0, 0, 0]})j");
  CHECK_THROWS_AS(apply_P(big, Field::constant(big.grid_ptr(), 1e200)), RangeError);
}

TEST_CASE("apply_P on constants matches scalar Horner") {
  const std::vector<double> a{0.5, -1.25, 2.0, 0.75};
  const Nonlinearity nl = make(R"j({"N": 4, "coeffs": [0.5, -1.25, 2, 0.75]})j");
  for (double c : {-2.0, -0.3, 0.0, 0.7, 1.9}) {
    const Field p = apply_P(nl, Field::constant(nl.grid_ptr(), c));
    for (double v : p.values()) CHECK(v == doctest::Approx(scalar_p(a, 4, c)).epsilon(1e-14));
    CHECK(nl.scalar(c) == doctest::Approx(scalar_p(a, 4, c)).epsilon(1e-14));
  }
}

TEST_CASE("apply_dP examples and finite-difference oracle") {
  const Nonlinearity fisher = make(R"j({"N": 2, "coeffs": ["0", "1"]})j");
  for (double v : values_of(apply_dP(fisher, Field::zeros(fisher.grid_ptr())))) CHECK(v == 1.0);
  const Nonlinearity cube = make(R"j({"N": 3, "coeffs": [0, 0, 0]})j");
  for (double v : values_of(apply_dP(cube, Field::constant(cube.grid_ptr(), 2.0)))) CHECK(v == -12.0);

  Sampler rng(17);
  const double eps = 1e-5;
  for (const char* spec : {R"j({"N": 3, "coeffs": ["0.2*exp(-x^2)", "1+0.5*cos(x)", "-0.3"]})j",
                           R"j({"N": 4, "coeffs": ["0", "sin(x)", "0", "1"], "signed_power": true})j"}) {
    const Nonlinearity nl = make(spec);
    for (int i = 0; i < 20; ++i) {
      const Field u = random_initial_data(nl.grid_ptr(), rng, -1.0, 1.0, 0.5);
      const Field shift = Field::constant(nl.grid_ptr(), eps);
      const Field fd = (apply_P(nl, u + shift) - apply_P(nl, u - shift)) * (0.5 / eps);
      CHECK(sup_distance(fd, apply_dP(nl, u)) < 1e-6);
      const Field fq = (potential(nl, u + shift) - potential(nl, u - shift)) * (0.5 / eps);
      CHECK(sup_distance(fq, apply_P(nl, u)) < 1e-6);
    }
  }
}

TEST_CASE("potential examples") {
  const Nonlinearity fisher = make(R"j({"N": 2, "coeffs": ["0", "1"]})j");
  for (double v : values_of(potential(fisher, Field::zeros(fisher.grid_ptr())))) CHECK(v == 0.0);
  for (double v : values_of(potential(fisher, Field::constant(fisher.grid_ptr(), 1.0)))) {
    CHECK(v == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  }
}

TEST_CASE("reaction_ratio") {
  const Nonlinearity fisher = make(R"j({"N": 2, "coeffs": ["0", "1"]})j");
  CHECK_THROWS_AS(reaction_ratio(fisher, Field::zeros(fisher.grid_ptr()), 0, 2.0), RangeError);
  CHECK(reaction_ratio(fisher, Field::constant(fisher.grid_ptr(), 1.0), 0, 2.0) == 0.0);
  // a_0 is removed: for P = 3 + u - u² at u ≡ c the ratio is |c - c²| / |c|.
  const Nonlinearity shifted = make(R"j({"N": 2, "coeffs": ["3", "1"]})j");
  CHECK(reaction_ratio(shifted, Field::constant(shifted.grid_ptr(), 0.25), 0, 2.0) ==
        doctest::Approx(0.75).epsilon(1e-14));

  const Nonlinearity cubic = make(R"j({"N": 3, "coeffs": ["0", "1", "0.5*cos(x)"]})j");
  Sampler rng(23);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Field u = random_smooth_field(cubic.grid_ptr(), rng, 2, 1.0);
    for (int j = 0; j <= 2; ++j) {
      double s = 0.0;
      for (double d : forward_difference(u, j)) s = std::max(s, std::abs(d));
      REQUIRE(s <= 1.0 + 1e-12);
    }
    worst = std::max(worst, reaction_ratio(cubic, u, 2, 2.0));
  }
  CHECK(std::isfinite(worst));
  CHECK(worst < 10.0);
}

TEST_CASE("constant coefficient detection") {
  CHECK(make(R"j({"N": 2, "coeffs": ["0", "1"]})j").constant_coefficients());
  CHECK_FALSE(make(R"j({"N": 2, "coeffs": ["0", "exp(-x^2)"]})j").constant_coefficients());
  const Nonlinearity nl = make(R"j({"N": 2, "coeffs": ["0", "1"]})j").without_leading_term();
  for (double v : values_of(apply_P(nl, Field::constant(nl.grid_ptr(), 2.0)))) CHECK(v == 2.0);
}
