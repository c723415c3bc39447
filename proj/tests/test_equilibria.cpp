#include <doctest.h>

#include <cmath>
#include <vector>

#include "gradflow/equilibria.hpp"
#include "gradflow/errors.hpp"
#include "gradflow/problem.hpp"

using namespace gradflow;

namespace {

Nonlinearity nl_of(const char* json) { return Nonlinearity::from_spec(load_spec(json)); }

std::vector<double> values_of(const std::vector<Equilibrium>& eqs) {
  std::vector<double> v;
  for (const auto& e : eqs) v.push_back(*e.constant_value);
  return v;
}

double scalar_newton(double (*f)(double), double (*df)(double), double x) {
  for (int i = 0; i < 100; ++i) x -= f(x) / df(x);
  return x;
}

}  // namespace

TEST_CASE("constant equilibria examples") {
  CHECK(values_of(constant_equilibria(nl_of(R"j({"N": 2, "coeffs": ["0", "1"]})j"))) ==
        std::vector<double>{0.0, 1.0});
  CHECK(values_of(constant_equilibria(nl_of(R"j({"N": 3, "coeffs": ["0", "1", "0"]})j"))) ==
        std::vector<double>{-1.0, 0.0, 1.0});
  CHECK(values_of(constant_equilibria(nl_of(R"j({"N": 2, "coeffs": [0, 0]})j"))) == std::vector<double>{0.0});
  for (const auto& e : constant_equilibria(nl_of(R"j({"N": 3, "coeffs": ["0", "1", "0"]})j"))) {
    CHECK(e.residual < 1e-10);
    CHECK(e.source == EquilibriumSource::constant);
    CHECK(std::isfinite(e.action));
  }
  CHECK_THROWS_AS(constant_equilibria(nl_of(R"j({"N": 2, "coeffs": ["0", "exp(-x^2)"]})j")), ValidationError);

  std::vector<std::string> rejected;
  const auto dir = constant_equilibria(nl_of(R"j({"N": 2, "coeffs": ["0", "1"], "boundary": "dirichlet0"})j"),
                                       &rejected);
  CHECK(values_of(dir) == std::vector<double>{0.0});
  CHECK(rejected.size() == 1);
}

TEST_CASE("scalar roots handle multiplicity and signed powers") {
  // -(c-1)²(c+2) = -c³ + 3c - 2.
  const std::vector<double> a{-2.0, 3.0, 0.0};
  const auto roots = scalar_real_roots(a, LeadingTerm::power);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(roots[1] == doctest::Approx(1.0).epsilon(1e-7));
  const std::vector<double> b{0.0, 1.0};
  const auto s = scalar_real_roots(b, LeadingTerm::signed_power);
  REQUIRE(s.size() == 3);
  CHECK(s[0] == doctest::Approx(-1.0));
  CHECK(s[1] == 0.0);
  CHECK(s[2] == doctest::Approx(1.0));
  const std::vector<double> c{1.0, 0.0};  // -c² + 1 > ... roots ±1
  const auto r = scalar_real_roots(c, LeadingTerm::power);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == doctest::Approx(-1.0).epsilon(1e-14));
  const std::vector<double> none{-1.0, 0.0};  // -c² - 1 has no real roots
  CHECK(scalar_real_roots(none, LeadingTerm::power).empty());
}

TEST_CASE("newton_refine examples") {
  const Nonlinearity fisher = nl_of(R"j({"N": 2, "coeffs": ["0", "1"]})j");
  std::vector<double> history;
  const Equilibrium at_root = newton_refine(fisher, Field::constant(fisher.grid_ptr(), 1.0), {}, &history);
  CHECK(history.size() <= 2);
  CHECK(at_root.residual < 1e-12);

  const double oracle = scalar_newton([](double u) { return u - u * u; }, [](double u) { return 1 - 2 * u; }, 0.9);
  const Equilibrium from_09 = newton_refine(fisher, Field::constant(fisher.grid_ptr(), 0.9));
  CHECK(oracle == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sup_distance(from_09.field, Field::constant(fisher.grid_ptr(), oracle)) < 1e-12);
  CHECK(from_09.source == EquilibriumSource::newton);

  std::vector<double> bad(fisher.grid_ptr()->size(), 0.5);
  bad[3] = NAN;
  CHECK_THROWS_AS(newton_refine(fisher, bad), ValidationError);

  NewtonOptions one;
  one.max_iter = 1;
  CHECK_THROWS_AS(newton_refine(fisher, Field::constant(fisher.grid_ptr(), 0.2), one), NoConvergenceError);
}

TEST_CASE("newton converges quadratically to a non-constant state") {
  const Nonlinearity cubic = nl_of(R"j({"N": 3, "coeffs": ["0", "1", "0"]})j");
  std::vector<double> r;
  const Equilibrium eq = newton_refine(
      cubic, Field::sample(cubic.grid_ptr(), Expr::parse("0.9*sin(0.6283185307179586*x)")), {}, &r);
  CHECK(eq.residual < 1e-10);
  CHECK(sup_norm(eq.field) > 0.5);
  CHECK(sup_norm(eq.field) < 1.0);
  int checked = 0;
  for (std::size_t k = 0; k + 1 < r.size(); ++k) {
    if (r[k] < 1e-1 && r[k + 1] > 1e-9) {
      CHECK(r[k + 1] <= 10.0 * r[k] * r[k]);
      ++checked;
    }
  }
  CHECK(checked >= 1);
}

TEST_CASE("shooting examples") {
  const Nonlinearity fisher = nl_of(R"j({"N": 2, "coeffs": ["0", "1"]})j");
  for (double u : {0.0, 1.0}) {
    const ShootResult s = shoot(fisher, u, 0.0, -5.0, 5.0);
    CHECK_FALSE(s.escaped);
    for (const PhasePoint& p : s.path) CHECK(p.u == u);
  }
  ShootOptions fine;
  fine.step = 1e-3;
  const ShootResult a = shoot(fisher, 0.5, 0.0, -5.0, 5.0, fine);
  REQUIRE(a.energy_drift.has_value());
  CHECK(*a.energy_drift <= 1e-10);
  fine.step = 5e-4;
  const ShootResult b = shoot(fisher, 0.5, 0.0, -5.0, 5.0, fine);
  CHECK(*b.energy_drift <= 1e-10);
  CHECK(std::abs(b.path.back().u - a.path.back().u) < 1e-8);

  ShootOptions coarse;
  coarse.step = fisher.grid_ptr()->h();
  CHECK_THROWS_AS(shoot(fisher, 0.5, 0.0, -5.0, 5.0, coarse), ValidationError);
}

TEST_CASE("escape directions") {
  const Nonlinearity fisher = nl_of(R"j({"N": 2, "coeffs": ["0", "1"]})j");
  const ShootResult up = shoot(fisher, 2.0, 1.0, -5.0, 5.0);
  CHECK(up.escaped);
  CHECK(up.escape_direction == 1);
  CHECK(escape_direction_admissible(2, LeadingTerm::power, up.escape_direction));
  CHECK_FALSE(escape_direction_admissible(2, LeadingTerm::power, -1));

  const Nonlinearity cubic = nl_of(R"j({"N": 3, "coeffs": ["0", "1", "0"]})j");
  const ShootResult pos = shoot(cubic, 2.0, 0.0, -5.0, 5.0);
  const ShootResult neg = shoot(cubic, -2.0, 0.0, -5.0, 5.0);
  CHECK(pos.escaped);
  CHECK(neg.escaped);
  CHECK(pos.escape_direction == 1);
  CHECK(neg.escape_direction == -1);
  CHECK(escape_direction_admissible(3, LeadingTerm::power, -1));
}

TEST_CASE("boundedness classification") {
  const Nonlinearity fisher = nl_of(R"j({"N": 2, "coeffs": ["0", "1"]})j");
  const Equilibrium one = constant_equilibria(fisher).back();
  const Boundedness b = classify_boundedness(one, -10.0, 10.0);
  CHECK(b.bounded_below);
  CHECK(b.bounded_above);
  const Boundedness tight = classify_boundedness(one, -10.0, 0.5);
  CHECK_FALSE(tight.bounded_above);
}

TEST_CASE("unstable direction examples") {
  const Nonlinearity fisher = nl_of(R"j({"N": 2, "coeffs": ["0", "1"], "grid_points": 64})j");
  const auto cat = constant_equilibria(fisher);
  const UnstableDirection at0 = unstable_direction(fisher, cat[0]);
  CHECK(at0.eigenvalue == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sup_norm(at0.direction) == doctest::Approx(1.0));
  CHECK_FALSE(at0.degenerate);
  const UnstableDirection at1 = unstable_direction(fisher, cat[1]);
  CHECK(at1.eigenvalue == doctest::Approx(-1.0).epsilon(1e-6));

  const Nonlinearity flat = nl_of(R"j({"N": 2, "coeffs": [0, 0], "grid_points": 64})j");
  const UnstableDirection z = unstable_direction(flat, constant_equilibria(flat)[0]);
  CHECK(std::abs(z.eigenvalue) < 1e-8);
  CHECK(z.degenerate);
}
