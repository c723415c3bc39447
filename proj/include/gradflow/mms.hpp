#pragma once

#include <string>
#include <vector>

#include "gradflow/expr.hpp"
#include "gradflow/problem.hpp"

namespace gradflow {

/// u*(t, x) = space(x) · time(t).
struct Manufactured {
  Expr space;
  Expr time;

  double value(double t, double x) const { return space.eval(x) * time.eval(t); }
};

struct MmsOptions {
  double t_final = 1.0;
  double dt0 = 0.05;  // coarsest step; M0 is the spec's grid_points
  double temporal_window_lo = 0.8;
  double temporal_window_hi = 1.2;
  double spatial_window_lo = 1.7;
  double spatial_window_hi = 2.3;
};

struct MmsLevel {
  std::size_t points = 0;
  double h = 0.0;
  double dt = 0.0;
  double error = 0.0;  // sup |u - u*| at t_final
};

struct MmsReport {
  std::vector<MmsLevel> temporal;  // forcing sampled at t_n: error ~ dt + h²
  std::vector<MmsLevel> spatial;   // forcing exact in time: error ~ h²
  double temporal_order = 0.0;     // least-squares slope of log e vs log dt
  double spatial_order = 0.0;      // least-squares slope of log e vs log h
  bool exact = false;              // every error is zero
  bool passed = false;
  std::string message;
};

/// Two refinement ladders (h, dt) -> (h/2, dt/2), `refinements` halvings each.
/// The forcing u*_t - Δu* - P(u*) uses finite differences of the sampled
/// manufactured expressions, never the grid Laplacian.
MmsReport mms_verify(const ProblemSpec& spec, const Manufactured& manufactured, int refinements,
                     const MmsOptions& opts = {});

}  // namespace gradflow
