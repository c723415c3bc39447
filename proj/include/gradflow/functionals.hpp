#pragma once

#include <vector>

#include "gradflow/nonlinearity.hpp"
#include "gradflow/trajectory.hpp"

namespace gradflow {

/// gradient_flow: A = -½∫|∇u|² + ∫Q(u), whose L² gradient is Δu + P(u), so A
/// grows along solutions. flipped_dirichlet flips the Dirichlet sign (+½∫|∇u|²).
enum class ActionConvention { gradient_flow, flipped_dirichlet };

struct ActionValue {
  double value = 0.0;
  double dirichlet_part = 0.0;  // ½ ∫ |D⁺u|², ghost edges included
  double potential_part = 0.0;  // ∫ Q(u)
};

/// Throws RangeError if an integrand overflows.
ActionValue action(const Nonlinearity& nl, const Field& u,
                   ActionConvention convention = ActionConvention::gradient_flow);

/// Δ_h u + P(u); the discrete L² gradient of the gradient-flow action.
Field flow_rhs(const Nonlinearity& nl, const Field& u);

struct EnergyAccumulator {
  double cumulative = 0.0;
  double window_start_t = 0.0;
  double last_t = 0.0;
};

/// Adds ½ dt [∫((u_after - u_before)/dt)² + ∫(Δ_h u_before + P(u_before))²].
/// Throws RangeError on a non-finite addend, ValidationError if dt <= 0.
EnergyAccumulator energy_step(const EnergyAccumulator& acc, const Field& u_before,
                              const Field& u_after, double dt, const Nonlinearity& nl);

/// Same update with Δ_h u_before + P(u_before) already at hand.
EnergyAccumulator energy_step(const EnergyAccumulator& acc, const Field& u_before,
                              const Field& u_after, double dt, const Field& rhs_before);

/// |E_window - (A(u_last) - A(u_first))| with E_window read from the
/// diagnostic rows. Requires at least two snapshots.
double identity_residual(const Trajectory& traj, const Nonlinearity& nl);

/// Builds a trajectory from bare snapshots, accumulating energy between
/// consecutive ones; used for hand-made snapshot sequences.
Trajectory trajectory_from_snapshots(std::vector<Snapshot> snapshots, const Nonlinearity& nl);

struct MonotonicityReport {
  std::size_t steps_checked = 0;
  std::size_t violations = 0;
  double worst_drop = 0.0;  // largest A_n - A_{n+1} seen (<= 0 if monotone)
};

/// Allowed decrease per step: 10·dt·max(1,|A|)·sqrt(machine epsilon).
double monotonicity_slack(double dt, double action_value);

/// Counts steps where the recorded action drops by more than the slack.
MonotonicityReport check_action_monotonicity(const Trajectory& traj);

}  // namespace gradflow
