#include "gradflow/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "gradflow/errors.hpp"
#include "gradflow/tridiagonal.hpp"

namespace gradflow {

namespace {

TridiagonalSystem implicit_diffusion_matrix(const SpatialGrid& grid, double dt) {
  const std::size_t m = grid.size();
  const double r = dt / (grid.h() * grid.h());
  TridiagonalSystem a;
  a.lower.assign(m, -r);
  a.upper.assign(m, -r);
  a.diag.assign(m, 1.0 + 2.0 * r);
  switch (grid.boundary()) {
    case Boundary::periodic: a.cyclic = true; break;
    case Boundary::dirichlet0: break;
    case Boundary::neumann0:
      a.diag.front() = 1.0 + r;
      a.diag.back() = 1.0 + r;
      break;
  }
  return a;
}

int extremum_sign(const Field& u) {
  double best = 0.0;
  int sign = 0;
  for (double v : u.values()) {
    if (std::abs(v) > best) {
      best = std::abs(v);
      sign = v > 0.0 ? 1 : -1;
    }
  }
  return sign;
}

}  // namespace

void StepControl::validate() const {
  if (!(dt_min > 0.0 && dt_min <= dt_init && dt_init <= dt_max)) {
    throw ValidationError("step control requires 0 < dt_min <= dt_init <= dt_max");
  }
  if (!(safety > 0.0 && safety <= 1.0)) throw ValidationError("safety must lie in (0, 1]");
  if (!(increment_limit > 0.0)) throw ValidationError("increment_limit must be > 0");
  if (!(sup_guard > 0.0)) throw ValidationError("sup_guard must be > 0");
  if (smooth_steps_to_grow < 1) throw ValidationError("smooth_steps_to_grow must be >= 1");
}

ImexResult imex_step_checked(const Field& u, double dt, const Nonlinearity& nl,
                             const Field* forcing) {
  if (!(dt > 0.0)) throw ValidationError("imex_step requires dt > 0");
  const Field p = apply_P(nl, u);
  std::vector<double> rhs(u.size());
  for (std::size_t j = 0; j < rhs.size(); ++j) {
    const double f = forcing ? (*forcing)[j] : 0.0;
    rhs[j] = u[j] + dt * (p[j] + f);
    if (!std::isfinite(rhs[j])) throw RangeError("imex right side is not finite");
  }
  const TridiagonalSystem a = implicit_diffusion_matrix(u.grid(), dt);
  std::vector<double> next = solve_tridiagonal(a, rhs);
  const double residual = relative_residual(a, next, rhs);
  return {Field(u.grid_ptr(), std::move(next)), residual};
}

Field imex_step(const Field& u, double dt, const Nonlinearity& nl) {
  return imex_step_checked(u, dt, nl).u;
}

Field imex_step(const Field& u, double dt, const Nonlinearity& nl, const Field& forcing) {
  if (!u.same_grid(forcing)) throw GridMismatchError();
  return imex_step_checked(u, dt, nl, &forcing).u;
}

Trajectory run(const ProblemSpec& spec, const Field& u0, const StepControl& ctrl,
               const StopRule& stop, const RunOptions& opts) {
  return run(Nonlinearity::from_spec(spec, u0.grid_ptr()), u0, ctrl, stop, opts);
}

Trajectory run(const Nonlinearity& nl, const Field& u0, const StepControl& ctrl,
               const StopRule& stop, const RunOptions& opts) {
  ctrl.validate();
  if (!(opts.t_max > 0.0)) throw ValidationError("t_max must be > 0");
  const std::size_t stride = std::max<std::size_t>(1, opts.snapshot_stride);

  Trajectory traj;
  Field u = u0;
  double t = 0.0;
  double dt = ctrl.dt_init;
  int smooth = 0;
  std::size_t step = 0;
  EnergyAccumulator acc;

  auto blow_up = [&](const Field& state, bool collapse) {
    traj.record_blow_up({t, sup_norm(state), extremum_sign(state), collapse});
    traj.finish(RunStatus::blow_up);
  };

  // P(u), Δ_h u + P(u) and A(u) for the current state; nullopt on overflow.
  struct Eval {
    Field p;
    Field rhs;
    double action;
  };
  auto evaluate = [&](const Field& state) -> std::optional<Eval> {
    try {
      Field p = apply_P(nl, state);
      Field rhs = laplacian(state) + p;
      const double a = gradflow::action(nl, state).value;
      return Eval{std::move(p), std::move(rhs), a};
    } catch (const RangeError&) {
      return std::nullopt;
    }
  };

  auto current = evaluate(u);
  traj.add_snapshot(0.0, u);
  if (!current) {
    blow_up(u, false);
    return traj;
  }
  traj.add_row({0.0, 0.0, sup_norm(u), current->action, 0.0, sup_norm(current->rhs)});
  if (sup_norm(u) > ctrl.sup_guard) {
    blow_up(u, false);
    return traj;
  }

  const double limit = ctrl.safety * ctrl.increment_limit;
  while (traj.status() == RunStatus::running) {
    if (sup_norm(current->rhs) < stop.tol_eq) {
      traj.finish(RunStatus::converged);
      break;
    }
    if (opts.t_max - t <= 1e-12 * std::max(1.0, opts.t_max)) {
      traj.finish(RunStatus::t_max_reached);
      break;
    }

    const double psup = sup_norm(current->p);
    bool cut = false;
    while (dt * psup > limit && dt >= ctrl.dt_min) {
      dt *= 0.5;
      cut = true;
    }
    if (dt < ctrl.dt_min) {
      blow_up(u, true);
      break;
    }

    const double step_dt = std::min(dt, opts.t_max - t);
    std::optional<ImexResult> stepped;
    try {
      stepped = imex_step_checked(u, step_dt, nl);
    } catch (const RangeError&) {
      blow_up(u, false);
      break;
    } catch (const SingularMatrixError&) {
      stepped.reset();
    }
    if (!stepped || stepped->linear_residual > kLinearSolveTolerance) {
      dt *= 0.5;
      smooth = 0;
      continue;
    }

    Field next = std::move(stepped->u);
    auto next_eval = evaluate(next);
    t += step_dt;
    ++step;
    if (!next_eval) {
      traj.add_snapshot(t, next);
      blow_up(next, false);
      break;
    }
    try {
      acc = energy_step(acc, u, next, step_dt, current->rhs);
    } catch (const RangeError&) {
      traj.add_snapshot(t, next);
      blow_up(next, false);
      break;
    }

    const double sup = sup_norm(next);
    traj.add_row({t, step_dt, sup, next_eval->action, acc.cumulative, sup_norm(next_eval->rhs)});
    u = std::move(next);
    current = std::move(next_eval);
    if (step % stride == 0) traj.add_snapshot(t, u);

    if (sup > ctrl.sup_guard) {
      blow_up(u, false);
      break;
    }

    smooth = cut ? 0 : smooth + 1;
    if (smooth >= ctrl.smooth_steps_to_grow) {
      dt = std::min(2.0 * dt, ctrl.dt_max);
      smooth = 0;
    }
  }

  if (traj.snapshots().back().t < t) traj.add_snapshot(t, u);
  return traj;
}

}  // namespace gradflow
