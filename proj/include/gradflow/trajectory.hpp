#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "gradflow/grid.hpp"

namespace gradflow {

enum class RunStatus { running, converged, blow_up, t_max_reached };

std::string_view status_name(RunStatus s);

struct Snapshot {
  double t;
  Field u;
};

/// One row per accepted step (row 0 is the initial state with dt = 0).
struct DiagnosticRow {
  double t = 0.0;
  double dt = 0.0;
  double sup_norm = 0.0;
  double action = 0.0;
  double energy_cum = 0.0;
  double ut_sup = 0.0;
};

/// Details recorded when a run ends in blow-up.
struct BlowUp {
  double t = 0.0;
  double sup_norm = 0.0;
  int sign = 0;  // sign of the escaping extremum; 0 if unknown
  bool dt_collapse = false;
};

class Trajectory {
 public:
  /// Times must be strictly increasing; throws ValidationError otherwise.
  void add_snapshot(double t, Field u);
  void add_row(const DiagnosticRow& row);

  /// Status is final once it leaves `running`; throws std::logic_error on a second transition.
  void finish(RunStatus status);
  void record_blow_up(const BlowUp& info);

  RunStatus status() const { return status_; }
  const std::vector<Snapshot>& snapshots() const { return snapshots_; }
  const std::vector<DiagnosticRow>& diagnostics() const { return rows_; }
  const std::optional<BlowUp>& blow_up() const { return blow_up_; }

  const Field& final_state() const { return snapshots_.back().u; }
  double final_time() const { return snapshots_.back().t; }

 private:
  std::vector<Snapshot> snapshots_;
  std::vector<DiagnosticRow> rows_;
  RunStatus status_ = RunStatus::running;
  std::optional<BlowUp> blow_up_;
};

/// `t,dt,sup_norm,action,energy_cum,ut_sup`, 17 significant digits.
void write_diagnostics_csv(std::ostream& os, const Trajectory& traj);

}  // namespace gradflow
