#include <doctest.h>

#include <cmath>
#include <limits>

#include "gradflow/dynamics.hpp"
#include "gradflow/errors.hpp"
#include "gradflow/functionals.hpp"
#include "gradflow/problem.hpp"
#include "gradflow/sampling.hpp"

using namespace gradflow;

namespace {

Nonlinearity fisher(std::size_t m = 256) {
  ProblemSpec s = load_spec(R"j({"N": 2, "coeffs": ["0", "1"]})j");
  s.grid_points = m;
  return Nonlinearity::from_spec(s);
}

// ∫ u̇² dt along the scalar logistic ODE from u0 until u̇ is negligible,
// by RK4 with a small fixed step.
double logistic_energy_density(double u0) {
  auto f = [](double u) { return u * (1.0 - u); };
  double u = u0, e = 0.0;
  const double dt = 1e-3;
  for (int n = 0; n < 100000; ++n) {
    auto g = [&](double v) { return f(v) * f(v); };
    const double k1 = f(u), k2 = f(u + 0.5 * dt * k1), k3 = f(u + 0.5 * dt * k2), k4 = f(u + dt * k3);
    e += dt / 6.0 * (g(u) + 2 * g(u + 0.5 * dt * k1) + 2 * g(u + 0.5 * dt * k2) + g(u + dt * k3));
    u += dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return e;
}

}  // namespace

TEST_CASE("action examples") {
  const Nonlinearity nl = fisher();
  const Field zero = Field::zeros(nl.grid_ptr());
  const Field one = Field::constant(nl.grid_ptr(), 1.0);
  CHECK(action(nl, zero).value == 0.0);
  const ActionValue a1 = action(nl, one);
  CHECK(a1.value == doctest::Approx(10.0 / 6.0).epsilon(1e-14));
  CHECK(a1.dirichlet_part == 0.0);
  CHECK(a1.value == -a1.dirichlet_part + a1.potential_part);
  CHECK(a1.value - action(nl, zero).value == doctest::Approx(10.0 / 6.0).epsilon(1e-14));

  const Field wave = Field::sample(nl.grid_ptr(), Expr::parse("0.5+0.1*sin(0.6283185307179586*x)"));
  const ActionValue gf = action(nl, wave);
  const ActionValue lit = action(nl, wave, ActionConvention::flipped_dirichlet);
  CHECK(gf.dirichlet_part > 0.0);
  CHECK(lit.value == doctest::Approx(gf.potential_part + gf.dirichlet_part).epsilon(1e-14));
}

TEST_CASE("discrete gradient consistency") {
  Sampler rng(31);
  for (const char* spec : {R"j({"N": 3, "coeffs": ["0.3*exp(-x^2)", "1+0.5*cos(x)", "-0.2"]})j",
                           R"j({"N": 2, "coeffs": ["0", "1"], "boundary": "neumann0", "grid_points": 100})j",
                           R"j({"N": 2, "coeffs": ["0", "1"], "boundary": "dirichlet0", "grid_points": 100})j"}) {
    const Nonlinearity nl = Nonlinearity::from_spec(load_spec(spec));
    for (int i = 0; i < 30; ++i) {
      const Field u = random_smooth_field(nl.grid_ptr(), rng, 2, 1.0);
      const Field v = random_smooth_field(nl.grid_ptr(), rng, 2, 1.0);
      const double eps = 1e-5;
      const double fd = (action(nl, u + v * eps).value - action(nl, u - v * eps).value) / (2 * eps);
      CHECK(std::abs(fd - inner(flow_rhs(nl, u), v)) < 1e-6);
    }
  }
}

TEST_CASE("energy_step examples") {
  const Nonlinearity nl = fisher();
  const Field one = Field::constant(nl.grid_ptr(), 1.0);
  const Field zero = Field::zeros(nl.grid_ptr());
  CHECK(energy_step({}, one, one, 0.1, nl).cumulative == 0.0);
  CHECK(energy_step({}, zero, zero, 0.1, nl).cumulative == 0.0);
  CHECK_THROWS_AS(energy_step({}, one, one, 0.0, nl), ValidationError);

  // Hand computation: u_b = 0.5, u_a = 0.6, dt = 0.1 on length 10.
  const Field a = Field::constant(nl.grid_ptr(), 0.5);
  const Field b = Field::constant(nl.grid_ptr(), 0.6);
  const double expected = 0.5 * 0.1 * (10.0 * 1.0 + 10.0 * 0.0625);
  CHECK(energy_step({}, a, b, 0.1, nl).cumulative == doctest::Approx(expected).epsilon(1e-13));

  EnergyAccumulator acc;
  Sampler rng(2);
  Field u = random_initial_data(nl.grid_ptr(), rng, 0.2, 0.8, 0.3);
  for (int i = 0; i < 50; ++i) {
    const Field next = imex_step(u, 0.01, nl);
    const EnergyAccumulator after = energy_step(acc, u, next, 0.01, nl);
    CHECK(after.cumulative >= acc.cumulative);
    acc = after;
    u = next;
  }
  CHECK(acc.cumulative >= 0.0);
}

TEST_CASE("logistic energy matches the scalar ODE oracle") {
  const Nonlinearity nl = fisher();
  StepControl ctrl;
  ctrl.dt_init = 1e-3;
  ctrl.dt_max = 1e-3;
  const double length = 10.0;
  CHECK(logistic_energy_density(0.5) == doctest::Approx(1.0 / 12.0).epsilon(1e-6));
  for (double u0 : {0.5, 1e-3}) {
    const Trajectory traj = run(nl, Field::constant(nl.grid_ptr(), u0), ctrl, StopRule{}, {60.0, 1000});
    REQUIRE(traj.status() == RunStatus::converged);
    const double oracle = length * logistic_energy_density(u0);
    CHECK(traj.diagnostics().back().energy_cum == doctest::Approx(oracle).epsilon(0.01));
    CHECK(identity_residual(traj, nl) <= 0.01 * length / 6.0);
  }
}

TEST_CASE("identity residual examples") {
  const Nonlinearity nl = fisher(64);
  const Field one = Field::constant(nl.grid_ptr(), 1.0);
  CHECK(identity_residual(trajectory_from_snapshots({{0.0, one}, {1.0, one}}, nl), nl) == 0.0);

  // Non-solution pair: residual is the defect ½ dt ∫ (u_t - Δu - P)².
  Sampler rng(41);
  for (int i = 0; i < 10; ++i) {
    const Field ua = random_initial_data(nl.grid_ptr(), rng, 0.0, 1.0, 0.5);
    const Field w = random_initial_data(nl.grid_ptr(), rng, -1.0, 1.0, 0.5);
    const double dt = 1e-5;
    const Field ub = ua + w * dt;
    const Field defect = w - flow_rhs(nl, ua);
    double oracle = 0.0;
    for (double d : defect.values()) oracle += d * d;
    oracle *= 0.5 * dt * nl.grid_ptr()->h();
    const double r = identity_residual(trajectory_from_snapshots({{0.0, ua}, {dt, ub}}, nl), nl);
    CHECK(r > 0.0);
    CHECK(r == doctest::Approx(oracle).epsilon(0.01));
  }
}

TEST_CASE("monotonicity checker flags drops beyond the slack") {
  CHECK(monotonicity_slack(0.01, 5.0) ==
        doctest::Approx(10 * 0.01 * 5.0 * std::sqrt(std::numeric_limits<double>::epsilon())));
  CHECK(monotonicity_slack(0.01, 0.1) == monotonicity_slack(0.01, 1.0));
  Trajectory t;
  const auto g = make_grid(5.0, 16, Boundary::periodic);
  t.add_snapshot(0.0, Field::zeros(g));
  t.add_row({0.0, 0.0, 0.0, 1.0, 0.0, 0.0});
  t.add_row({0.1, 0.1, 0.0, 1.0 - 1e-12, 0.0, 0.0});
  t.add_row({0.2, 0.1, 0.0, 0.9, 0.0, 0.0});
  t.add_row({0.3, 0.1, 0.0, 1.2, 0.0, 0.0});
  const MonotonicityReport r = check_action_monotonicity(t);
  CHECK(r.steps_checked == 3);
  CHECK(r.violations == 1);
  CHECK(r.worst_drop == doctest::Approx(0.1 - 1e-12));
}
