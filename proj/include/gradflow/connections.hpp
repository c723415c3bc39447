#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gradflow/dynamics.hpp"
#include "gradflow/equilibria.hpp"

namespace gradflow {

enum class ConnectionStatus { connected, blow_up, undecided };

std::string_view connection_status_name(ConnectionStatus s);

struct ConnectionOptions {
  double match_tol = 1e-4;         // sup distance to a polished catalog member
  double tail_tol = 1e-8;          // energy per unit time over the tail window
  double tail_fraction = 0.1;      // trailing share of the run used for the tail rate
  double identity_rel_tol = 0.02;  // |E - ΔA| <= max(rel·|ΔA|, abs)
  double identity_abs_tol = 1e-6;
  std::size_t snapshot_stride = 64;
};

struct ConnectionReport {
  ConnectionStatus status = ConnectionStatus::undecided;
  std::optional<std::size_t> start;  // catalog index; the α-limit by construction
  std::optional<std::size_t> end;
  double total_energy = 0.0;
  double action_gap = 0.0;         // A(end) - A(start), catalog values
  double identity_residual = 0.0;  // |E - (A(u_final) - A(u_0))| along the run
  double tail_energy_rate = 0.0;
  double match_distance = 0.0;
  double fit_quality = 0.0;        // R² of the trailing energy fit; nan if too few rows
  RunStatus run_status = RunStatus::running;
  Trajectory trajectory;
};

/// Runs the flow from catalog[from] + amplitude·direction (forward in time
/// only) and, on convergence, Newton-polishes the final state and matches it
/// against the catalog by sup distance.
ConnectionReport launch_connection(const Nonlinearity& nl, const std::vector<Equilibrium>& catalog,
                                   std::size_t from, const Field& direction, double amplitude,
                                   const StepControl& ctrl, const StopRule& stop, double t_max,
                                   const ConnectionOptions& opts = {});

/// True when a connected report satisfies the tail and identity bounds.
bool connection_consistent(const ConnectionReport& r, const ConnectionOptions& opts);

struct GrowthFit {
  double rate = 0.0;
  double fit_quality = 0.0;  // coefficient of determination; 1 for a flat series
};

/// Least-squares line through cumulative energy vs t over the trailing
/// `window_fraction` of the run. Throws ValidationError below 100 rows.
GrowthFit energy_growth_diagnostic(const Trajectory& traj, double window_fraction);

/// Energy added per unit time over the trailing fraction of the run.
double tail_energy_rate(const Trajectory& traj, double fraction);

struct LaunchPlanEntry {
  enum class Kind { connection, front };
  Kind kind = Kind::connection;
  // connection
  std::size_t from = 0;
  double amplitude = 1e-3;
  // front
  std::optional<ProblemSpec> problem;  // overrides the base problem
  std::optional<Expr> initial_condition;
  double window_fraction = 0.5;
  double min_fit_quality = 0.99;

  double t_max = 50.0;
};

struct LaunchRow {
  std::size_t launch_id = 0;
  LaunchPlanEntry::Kind kind = LaunchPlanEntry::Kind::connection;
  ConnectionStatus status = ConnectionStatus::undecided;
  std::optional<std::size_t> from;
  std::optional<std::size_t> to;
  double total_energy = 0.0;
  double action_gap = 0.0;
  double identity_residual = 0.0;
  double tail_rate = 0.0;
  double fit_quality = 0.0;
  double growth_rate = 0.0;
  std::string verdict;  // pass, fail, excluded
  std::string note;
};

/// Executes a launch plan (launches run concurrently, rows kept in plan order).
/// Connected rows must satisfy the finite-energy bounds; front rows must show
/// linear energy growth and end away from every catalog member; blow-up rows
/// are excluded from the check.
std::vector<LaunchRow> verify_launch_plan(const ProblemSpec& spec,
                                           const std::vector<Equilibrium>& catalog,
                                           const std::vector<LaunchPlanEntry>& plan,
                                           const StepControl& ctrl, const StopRule& stop,
                                           const ConnectionOptions& opts = {});

/// `launch_id,status,from,to,total_energy,action_gap,identity_residual,tail_rate,fit_quality`
void write_launch_csv(std::ostream& os, const std::vector<LaunchRow>& rows);

}  // namespace gradflow
