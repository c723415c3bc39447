#include "gradflow/functionals.hpp"

#include <cmath>
#include <limits>

#include "gradflow/errors.hpp"

namespace gradflow {

ActionValue action(const Nonlinearity& nl, const Field& u, ActionConvention convention) {
  ActionValue a;
  a.dirichlet_part = 0.5 * dirichlet_form(u);
  a.potential_part = integrate(potential(nl, u));
  a.value = convention == ActionConvention::gradient_flow ? -a.dirichlet_part + a.potential_part
                                                          : a.dirichlet_part + a.potential_part;
  if (!std::isfinite(a.value) || !std::isfinite(a.dirichlet_part)) {
    throw RangeError("action integrand is not finite");
  }
  return a;
}

Field flow_rhs(const Nonlinearity& nl, const Field& u) { return laplacian(u) + apply_P(nl, u); }

EnergyAccumulator energy_step(const EnergyAccumulator& acc, const Field& u_before,
                              const Field& u_after, double dt, const Field& rhs_before) {
  if (!(dt > 0.0)) throw ValidationError("energy_step requires dt > 0");
  if (!u_before.same_grid(u_after) || !u_before.same_grid(rhs_before)) throw GridMismatchError();
  const Field ut = (u_after - u_before) * (1.0 / dt);
  const double addend = 0.5 * dt * (inner(ut, ut) + inner(rhs_before, rhs_before));
  if (!std::isfinite(addend)) throw RangeError("energy addend is not finite");
  EnergyAccumulator next = acc;
  next.cumulative += addend;
  next.last_t += dt;
  return next;
}

EnergyAccumulator energy_step(const EnergyAccumulator& acc, const Field& u_before,
                              const Field& u_after, double dt, const Nonlinearity& nl) {
  return energy_step(acc, u_before, u_after, dt, flow_rhs(nl, u_before));
}

double identity_residual(const Trajectory& traj, const Nonlinearity& nl) {
  const auto& snaps = traj.snapshots();
  const auto& rows = traj.diagnostics();
  if (snaps.size() < 2) throw ValidationError("identity_residual needs at least two snapshots");
  if (rows.size() < 2) throw ValidationError("identity_residual needs diagnostic rows");
  const double energy = rows.back().energy_cum - rows.front().energy_cum;
  const double gap = action(nl, snaps.back().u).value - action(nl, snaps.front().u).value;
  return std::abs(energy - gap);
}

Trajectory trajectory_from_snapshots(std::vector<Snapshot> snapshots, const Nonlinearity& nl) {
  Trajectory traj;
  EnergyAccumulator acc;
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    const Snapshot& s = snapshots[i];
    DiagnosticRow row;
    row.t = s.t;
    if (i == 0) {
      acc.window_start_t = acc.last_t = s.t;
    } else {
      row.dt = s.t - snapshots[i - 1].t;
      acc = energy_step(acc, snapshots[i - 1].u, s.u, row.dt, nl);
    }
    row.sup_norm = sup_norm(s.u);
    row.action = action(nl, s.u).value;
    row.energy_cum = acc.cumulative;
    row.ut_sup = sup_norm(flow_rhs(nl, s.u));
    traj.add_row(row);
  }
  for (Snapshot& s : snapshots) traj.add_snapshot(s.t, std::move(s.u));
  return traj;
}

double monotonicity_slack(double dt, double action_value) {
  static const double root_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  return 10.0 * dt * std::max(1.0, std::abs(action_value)) * root_eps;
}

MonotonicityReport check_action_monotonicity(const Trajectory& traj) {
  MonotonicityReport report;
  report.worst_drop = -std::numeric_limits<double>::infinity();
  const auto& rows = traj.diagnostics();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double drop = rows[i - 1].action - rows[i].action;
    ++report.steps_checked;
    report.worst_drop = std::max(report.worst_drop, drop);
    if (drop > monotonicity_slack(rows[i].dt, rows[i - 1].action)) ++report.violations;
  }
  if (report.steps_checked == 0) report.worst_drop = 0.0;
  return report;
}

}  // namespace gradflow
