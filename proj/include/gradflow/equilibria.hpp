#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gradflow/functionals.hpp"
#include "gradflow/nonlinearity.hpp"

namespace gradflow {

enum class EquilibriumSource { constant, newton, shooting };

std::string_view source_name(EquilibriumSource s);

inline constexpr double kEquilibriumTolerance = 1e-10;
inline constexpr double kShootingTolerance = 1e-8;

/// A state with sup|Δ_h u + P(u)| within tolerance, plus its action.
struct Equilibrium {
  Field field;
  double residual = 0.0;
  double action = 0.0;
  bool bounded_below = true;
  bool bounded_above = true;
  EquilibriumSource source = EquilibriumSource::constant;
  std::optional<double> constant_value;  // set for constant equilibria
};

/// Real roots of the scalar polynomial p(c) = lead(c) + Σ a_i c^i, by
/// bracketing on [-R, R] (R = 1 + max|a_i|) between critical points,
/// bisection to 1e-14 and a guarded Newton polish. Multiple roots are found
/// at critical points where |p| vanishes. Sorted ascending.
std::vector<double> scalar_real_roots(std::span<const double> coeffs, LeadingTerm lead);

/// Every real root of p as a constant field. Roots whose constant field is
/// not a discrete equilibrium (e.g. c != 0 under dirichlet0) or whose action
/// is not finite are skipped and described in `rejected`. Throws
/// ValidationError when the coefficients are not spatially constant.
std::vector<Equilibrium> constant_equilibria(const Nonlinearity& nl,
                                             std::vector<std::string>* rejected = nullptr);

struct NewtonOptions {
  int max_iter = 50;
  double tol = kEquilibriumTolerance;
  int max_halvings = 8;
};

/// Damped Newton on F(u) = Δ_h u + P(u) with Jacobian Δ_h + diag(P'(u)).
/// Throws NoConvergenceError after max_iter, SingularMatrixError when a
/// Jacobian pivot drops below 1e-14. `history` receives sup|F| per iterate.
Equilibrium newton_refine(const Nonlinearity& nl, const Field& guess, const NewtonOptions& opts = {},
                          std::vector<double>* history = nullptr);
/// Raw-sample overload: throws ValidationError if any entry is non-finite.
Equilibrium newton_refine(const Nonlinearity& nl, const std::vector<double>& guess,
                          const NewtonOptions& opts = {}, std::vector<double>* history = nullptr);

/// Wraps a field as an Equilibrium (residual and action filled in) without
/// checking the residual bound.
Equilibrium make_equilibrium(const Nonlinearity& nl, Field u, EquilibriumSource source);

struct PhasePoint {
  double x;
  double u;
  double v;
};

struct ShootOptions {
  double step = 0.0;  // RK4 step; 0 means h/4 of the nonlinearity's grid
  double escape_threshold = 1e6;
};

struct ShootResult {
  std::vector<PhasePoint> path;
  bool escaped = false;
  int escape_direction = 0;  // sign of u at escape
  double escape_x = 0.0;
  /// max |H - H(start)| for H = ½v² + Q(u); only with constant coefficients.
  std::optional<double> energy_drift;
};

/// RK4 for u'' = -P(x, u) as (u, v = u')' = (v, -P). Coefficients between
/// nodes are linearly interpolated (clamped outside the box). Throws
/// ValidationError if the step exceeds h/4.
ShootResult shoot(const Nonlinearity& nl, double u_left, double slope_left, double x_begin,
                  double x_end, const ShootOptions& opts = {});

struct Boundedness {
  bool bounded_below;
  bool bounded_above;
};

Boundedness classify_boundedness(const Equilibrium& eq, double lower, double upper);

/// Escape directions admitted by the phase-plane argument: for the -u^N
/// leading term with N even, u'' ≈ u^N > 0 for large |u| so paths can only
/// leave toward +∞; N odd (or the signed-power variant) admits both.
bool escape_direction_admissible(int degree, LeadingTerm lead, int direction);

struct UnstableDirection {
  double eigenvalue = 0.0;
  Field direction;  // sup-norm 1, largest entry positive
  bool degenerate = false;  // |eigenvalue| < 1e-8
  int iterations = 0;
};

/// Power iteration on Δ_h + diag(P'(u)) + σI with σ = 4/h² - min P'(u), the
/// Gershgorin shift that makes every eigenvalue non-negative, so the dominant
/// eigenpair is the most unstable mode of the linearisation. Starts from the
/// constant vector. Throws NoConvergenceError after `max_iter` iterations.
UnstableDirection unstable_direction(const Nonlinearity& nl, const Equilibrium& eq,
                                     int max_iter = 10000);

}  // namespace gradflow
