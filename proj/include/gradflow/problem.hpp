#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gradflow/expr.hpp"
#include "gradflow/grid.hpp"

namespace gradflow {

/// u_t = Δu + P(u),  P(u) = -u^N + Σ_{i<N} a_i(x) u^i  on [-L/2, L/2].
struct ProblemSpec {
  int N = 2;
  std::vector<Expr> coeffs;  // a_0 .. a_{N-1}
  double box_half_length = 5.0;
  std::size_t grid_points = 256;
  Boundary boundary = Boundary::periodic;
  bool signed_power = false;
  double sup_guard = 1e6;
  int spatial_dim = 1;

  GridPtr make_grid() const;
  LeadingTerm leading_term() const {
    return signed_power ? LeadingTerm::signed_power : LeadingTerm::power;
  }

  bool operator==(const ProblemSpec& other) const;
};

/// Throws ValidationError naming the violated invariant.
void validate(const ProblemSpec& spec);

/// Accepts either a `coeffs` array or `a_0`..`a_{N-1}` keys. Throws
/// ValidationError (also for JSON syntax and type errors).
ProblemSpec spec_from_json(const nlohmann::json& j);
ProblemSpec load_spec(std::string_view config_text);

/// Canonical form: field names as in ProblemSpec, coefficients printed
/// by the canonical expression printer.
nlohmann::json spec_to_json(const ProblemSpec& spec);
std::string canonical_text(const ProblemSpec& spec);

struct CoefficientNorm {
  double l1 = 0.0;
  double linf = 0.0;
};

/// Discrete L¹ (h Σ |a_i|) and L∞ (max |a_i|) of each sampled coefficient.
std::vector<CoefficientNorm> coefficient_norms(const ProblemSpec& spec);

/// Human-readable notes on where the truncated problem departs from the
/// decaying-coefficient hypothesis (e.g. a constant a_i). Empty if none.
std::vector<std::string> hypothesis_notes(const ProblemSpec& spec);

}  // namespace gradflow
