#pragma once

#include "gradflow/functionals.hpp"
#include "gradflow/nonlinearity.hpp"
#include "gradflow/problem.hpp"
#include "gradflow/trajectory.hpp"

namespace gradflow {

struct StepControl {
  double dt_init = 1e-3;
  double dt_min = 1e-12;
  double dt_max = 1e-2;
  double safety = 1.0;            // scales increment_limit
  double increment_limit = 0.1;   // max dt·sup|P(u)| for an accepted step
  double sup_guard = 1e6;         // U_max
  int smooth_steps_to_grow = 10;

  /// Throws ValidationError unless 0 < dt_min <= dt_init <= dt_max, safety in
  /// (0,1], and the limits are positive.
  void validate() const;
};

struct StopRule {
  double tol_eq = 1e-9;  // converged once sup|Δ_h u + P(u)| < tol_eq
};

struct RunOptions {
  double t_max = 10.0;
  std::size_t snapshot_stride = 64;
};

/// Linear residual bound for (I - dt Δ_h) solves; worse counts as degraded.
inline constexpr double kLinearSolveTolerance = 1e-12;

struct ImexResult {
  Field u;
  double linear_residual;
};

/// One implicit-diffusion / explicit-reaction step:
///   (I - dt Δ_h) u_next = u + dt (P(u) + forcing).
/// Throws RangeError if the right side is non-finite.
ImexResult imex_step_checked(const Field& u, double dt, const Nonlinearity& nl,
                             const Field* forcing = nullptr);
Field imex_step(const Field& u, double dt, const Nonlinearity& nl);
Field imex_step(const Field& u, double dt, const Nonlinearity& nl, const Field& forcing);

/// Adaptive driver. dt halves while dt·sup|P(u)| > safety·increment_limit or
/// the linear solve degrades, and doubles (capped at dt_max) after
/// `smooth_steps_to_grow` steps without a cut. Ends in converged, blow_up
/// (sup > U_max, non-finite state or dt < dt_min) or t_max_reached. Energy is
/// accumulated every step; snapshots every `snapshot_stride` steps plus the
/// first and last state.
Trajectory run(const Nonlinearity& nl, const Field& u0, const StepControl& ctrl,
               const StopRule& stop, const RunOptions& opts);
Trajectory run(const ProblemSpec& spec, const Field& u0, const StepControl& ctrl,
               const StopRule& stop, const RunOptions& opts);

}  // namespace gradflow
