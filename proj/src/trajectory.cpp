#include "gradflow/trajectory.hpp"

#include <ostream>
#include <stdexcept>

#include "gradflow/errors.hpp"

namespace gradflow {

std::string_view status_name(RunStatus s) {
  switch (s) {
    case RunStatus::running: return "running";
    case RunStatus::converged: return "converged";
    case RunStatus::blow_up: return "blow_up";
    case RunStatus::t_max_reached: return "t_max_reached";
  }
  return "running";
}

void Trajectory::add_snapshot(double t, Field u) {
  if (!snapshots_.empty() && !(t > snapshots_.back().t)) {
    throw ValidationError("snapshot times must be strictly increasing");
  }
  snapshots_.push_back({t, std::move(u)});
}

void Trajectory::add_row(const DiagnosticRow& row) {
  if (!rows_.empty() && !(row.t > rows_.back().t)) {
    throw ValidationError("diagnostic times must be strictly increasing");
  }
  rows_.push_back(row);
}

void Trajectory::finish(RunStatus status) {
  if (status_ != RunStatus::running) throw std::logic_error("trajectory status is already final");
  status_ = status;
}

void Trajectory::record_blow_up(const BlowUp& info) { blow_up_ = info; }

void write_diagnostics_csv(std::ostream& os, const Trajectory& traj) {
  const auto old_precision = os.precision(17);
  os << "t,dt,sup_norm,action,energy_cum,ut_sup\n";
  for (const DiagnosticRow& r : traj.diagnostics()) {
    os << r.t << ',' << r.dt << ',' << r.sup_norm << ',' << r.action << ',' << r.energy_cum << ','
       << r.ut_sup << '\n';
  }
  os.precision(old_precision);
}

}  // namespace gradflow
