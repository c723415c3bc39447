#include "gradflow/connections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "gradflow/errors.hpp"

namespace gradflow {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::optional<std::size_t> nearest(const std::vector<Equilibrium>& catalog, const Field& u,
                                   double tol, double* distance) {
  std::optional<std::size_t> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    if (!catalog[i].field.same_grid(u)) continue;
    const double d = sup_distance(catalog[i].field, u);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  if (distance) *distance = best_d;
  if (best && best_d < tol) return best;
  return std::nullopt;
}

}  // namespace

std::string_view connection_status_name(ConnectionStatus s) {
  switch (s) {
    case ConnectionStatus::connected: return "connected";
    case ConnectionStatus::blow_up: return "blow_up";
    case ConnectionStatus::undecided: return "undecided";
  }
  return "undecided";
}

double tail_energy_rate(const Trajectory& traj, double fraction) {
  const auto& rows = traj.diagnostics();
  if (rows.size() < 2) return 0.0;
  const double t_end = rows.back().t;
  const double t_lo = t_end - fraction * (t_end - rows.front().t);
  const auto it = std::lower_bound(rows.begin(), rows.end(), t_lo,
                                   [](const DiagnosticRow& r, double t) { return r.t < t; });
  if (it == rows.end() || it->t >= t_end) return 0.0;
  return (rows.back().energy_cum - it->energy_cum) / (t_end - it->t);
}

GrowthFit energy_growth_diagnostic(const Trajectory& traj, double window_fraction) {
  const auto& rows = traj.diagnostics();
  if (rows.size() < 100) {
    throw ValidationError("energy_growth_diagnostic needs at least 100 diagnostic rows (got " +
                          std::to_string(rows.size()) + ")");
  }
  const double t_end = rows.back().t;
  const double t_lo = t_end - window_fraction * (t_end - rows.front().t);
  double n = 0, st = 0, se = 0;
  for (const auto& r : rows) {
    if (r.t < t_lo) continue;
    n += 1;
    st += r.t;
    se += r.energy_cum;
  }
  const double mt = st / n;
  const double me = se / n;
  double stt = 0, ste = 0, see = 0;
  for (const auto& r : rows) {
    if (r.t < t_lo) continue;
    stt += (r.t - mt) * (r.t - mt);
    ste += (r.t - mt) * (r.energy_cum - me);
    see += (r.energy_cum - me) * (r.energy_cum - me);
  }
  GrowthFit fit;
  if (stt == 0.0 || see == 0.0) {
    fit.rate = 0.0;
    fit.fit_quality = 1.0;
    return fit;
  }
  fit.rate = ste / stt;
  const double ss_res = see - fit.rate * ste;
  fit.fit_quality = 1.0 - std::max(0.0, ss_res) / see;
  return fit;
}

ConnectionReport launch_connection(const Nonlinearity& nl, const std::vector<Equilibrium>& catalog,
                                   std::size_t from, const Field& direction, double amplitude,
                                   const StepControl& ctrl, const StopRule& stop, double t_max,
                                   const ConnectionOptions& opts) {
  if (from >= catalog.size()) throw ValidationError("launch_connection: catalog index out of range");
  const Equilibrium& start = catalog[from];
  const Field u0 = start.field + direction * amplitude;

  ConnectionReport rep;
  rep.start = from;
  rep.trajectory = run(nl, u0, ctrl, stop, {t_max, opts.snapshot_stride});
  const Trajectory& traj = rep.trajectory;
  rep.run_status = traj.status();
  rep.total_energy = traj.diagnostics().back().energy_cum;
  rep.tail_energy_rate = tail_energy_rate(traj, opts.tail_fraction);
  rep.fit_quality = traj.diagnostics().size() >= 100
                        ? energy_growth_diagnostic(traj, opts.tail_fraction).fit_quality
                        : kNaN;
  if (traj.snapshots().size() >= 2) rep.identity_residual = identity_residual(traj, nl);

  if (traj.status() == RunStatus::blow_up) {
    rep.status = ConnectionStatus::blow_up;
    return rep;
  }
  if (traj.status() != RunStatus::converged) {
    rep.status = ConnectionStatus::undecided;
    return rep;
  }

  Field limit = traj.final_state();
  try {
    limit = newton_refine(nl, limit).field;
  } catch (const Error&) {
    // keep the unpolished state; matching decides
  }
  rep.end = nearest(catalog, limit, opts.match_tol, &rep.match_distance);
  if (!rep.end) {
    rep.status = ConnectionStatus::undecided;
    return rep;
  }
  rep.status = ConnectionStatus::connected;
  rep.action_gap = catalog[*rep.end].action - start.action;
  return rep;
}

bool connection_consistent(const ConnectionReport& r, const ConnectionOptions& opts) {
  if (r.status != ConnectionStatus::connected) return false;
  const double tol = std::max(opts.identity_rel_tol * std::abs(r.action_gap), opts.identity_abs_tol);
  return std::isfinite(r.total_energy) && r.total_energy >= 0.0 &&
         r.tail_energy_rate < opts.tail_tol && std::abs(r.total_energy - r.action_gap) <= tol;
}

namespace {

LaunchRow run_connection_row(const Nonlinearity& nl, const std::vector<Equilibrium>& catalog,
                             const LaunchPlanEntry& e, const StepControl& ctrl,
                             const StopRule& stop, const ConnectionOptions& opts) {
  LaunchRow row;
  row.from = e.from;
  if (e.from >= catalog.size()) {
    row.verdict = "fail";
    row.note = "catalog index out of range";
    return row;
  }
  const UnstableDirection dir = unstable_direction(nl, catalog[e.from]);
  const ConnectionReport rep =
      launch_connection(nl, catalog, e.from, dir.direction, e.amplitude, ctrl, stop, e.t_max, opts);
  row.status = rep.status;
  row.to = rep.end;
  row.total_energy = rep.total_energy;
  row.action_gap = rep.action_gap;
  row.identity_residual = rep.identity_residual;
  row.tail_rate = rep.tail_energy_rate;
  row.fit_quality = rep.fit_quality;
  switch (rep.status) {
    case ConnectionStatus::blow_up:
      row.verdict = "excluded";
      row.note = "blow-up: not a global solution";
      break;
    case ConnectionStatus::connected:
      row.verdict = connection_consistent(rep, opts) ? "pass" : "fail";
      row.note = row.verdict == "pass" ? "finite energy, matches action gap"
                                       : "energy/action identity or tail bound violated";
      break;
    case ConnectionStatus::undecided:
      row.verdict = "fail";
      row.note = std::string("run ended ") + std::string(status_name(rep.run_status)) +
                 " without matching the catalog";
      break;
  }
  return row;
}

LaunchRow run_front_row(const ProblemSpec& base, const LaunchPlanEntry& e,
                        const StepControl& ctrl, const StopRule& stop,
                        const ConnectionOptions& opts) {
  LaunchRow row;
  row.kind = LaunchPlanEntry::Kind::front;
  const ProblemSpec& spec = e.problem ? *e.problem : base;
  const Nonlinearity nl = Nonlinearity::from_spec(spec);
  if (!e.initial_condition) {
    row.verdict = "fail";
    row.note = "front launch needs an initial condition";
    return row;
  }
  const Field u0 = Field::sample(nl.grid_ptr(), *e.initial_condition);
  const Trajectory traj = run(nl, u0, ctrl, stop, {e.t_max, opts.snapshot_stride});
  row.total_energy = traj.diagnostics().back().energy_cum;
  row.tail_rate = tail_energy_rate(traj, opts.tail_fraction);
  if (traj.status() == RunStatus::blow_up) {
    row.status = ConnectionStatus::blow_up;
    row.verdict = "excluded";
    row.note = "blow-up: not a global solution";
    return row;
  }
  const GrowthFit fit = energy_growth_diagnostic(traj, e.window_fraction);
  row.fit_quality = fit.fit_quality;
  row.growth_rate = fit.rate;
  if (traj.status() == RunStatus::converged) {
    row.status = ConnectionStatus::undecided;
    row.verdict = "fail";
    row.note = "front run converged; no growth to test";
    return row;
  }
  row.status = ConnectionStatus::undecided;

  std::vector<Equilibrium> catalog;
  if (nl.constant_coefficients()) catalog = constant_equilibria(nl);
  double dist = 0.0;
  const bool matched = nearest(catalog, traj.final_state(), opts.match_tol, &dist).has_value();
  const bool growth = fit.rate > 0.0 && fit.fit_quality > e.min_fit_quality;
  row.verdict = growth && !matched ? "pass" : "fail";
  row.note = growth ? (matched ? "linear growth but final state matches an equilibrium"
                               : "linear energy growth (infinite-energy-like), no equilibrium limit")
                    : "no linear energy growth";
  return row;
}

}  // namespace

std::vector<LaunchRow> verify_launch_plan(const ProblemSpec& spec,
                                           const std::vector<Equilibrium>& catalog,
                                           const std::vector<LaunchPlanEntry>& plan,
                                           const StepControl& ctrl, const StopRule& stop,
                                           const ConnectionOptions& opts) {
  std::vector<LaunchRow> rows(plan.size());
  const Nonlinearity nl = Nonlinearity::from_spec(spec);
  const auto n = static_cast<std::ptrdiff_t>(plan.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const LaunchPlanEntry& e = plan[static_cast<std::size_t>(i)];
    LaunchRow row;
    try {
      row = e.kind == LaunchPlanEntry::Kind::connection
                ? run_connection_row(nl, catalog, e, ctrl, stop, opts)
                : run_front_row(spec, e, ctrl, stop, opts);
    } catch (const std::exception& ex) {
      row.kind = e.kind;
      row.verdict = "fail";
      row.note = ex.what();
    }
    row.launch_id = static_cast<std::size_t>(i);
    rows[static_cast<std::size_t>(i)] = std::move(row);
  }
  return rows;
}

void write_launch_csv(std::ostream& os, const std::vector<LaunchRow>& rows) {
  const auto old_precision = os.precision(17);
  os << "launch_id,status,from,to,total_energy,action_gap,identity_residual,tail_rate,fit_quality\n";
  for (const LaunchRow& r : rows) {
    os << r.launch_id << ',' << connection_status_name(r.status) << ',';
    if (r.from && r.kind == LaunchPlanEntry::Kind::connection) os << *r.from;
    os << ',';
    if (r.to) os << *r.to;
    os << ',' << r.total_energy << ',' << r.action_gap << ',' << r.identity_residual << ','
       << r.tail_rate << ',' << r.fit_quality << '\n';
  }
  os.precision(old_precision);
}

}  // namespace gradflow
