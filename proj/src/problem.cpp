#include "gradflow/problem.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gradflow/errors.hpp"

namespace gradflow {

namespace {

const std::set<std::string> kSpecKeys{"N", "coeffs", "box_half_length", "grid_points",
                                      "boundary", "signed_power", "sup_guard", "spatial_dim"};

bool is_coefficient_key(const std::string& key) {
  return key.size() > 2 && key.rfind("a_", 0) == 0 &&
         std::all_of(key.begin() + 2, key.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Expr parse_coefficient(const nlohmann::json& v, int i) {
  try {
    if (v.is_number()) return Expr::parse(v.dump());
    return Expr::parse(v.get<std::string>());
  } catch (const Error& e) {
    throw ValidationError("coefficient a_" + std::to_string(i) + ": " + e.what());
  }
}

}  // namespace

GridPtr ProblemSpec::make_grid() const {
  return gradflow::make_grid(box_half_length, grid_points, boundary);
}

bool ProblemSpec::operator==(const ProblemSpec& o) const {
  return N == o.N && coeffs == o.coeffs && box_half_length == o.box_half_length &&
         grid_points == o.grid_points && boundary == o.boundary &&
         signed_power == o.signed_power && sup_guard == o.sup_guard &&
         spatial_dim == o.spatial_dim;
}

void validate(const ProblemSpec& spec) {
  if (spec.N < 2) throw ValidationError("N >= 2 required (got " + std::to_string(spec.N) + ")");
  if (spec.coeffs.size() != static_cast<std::size_t>(spec.N)) {
    throw ValidationError("coeffs must have exactly N = " + std::to_string(spec.N) +
                          " entries (got " + std::to_string(spec.coeffs.size()) + ")");
  }
  if (spec.spatial_dim != 1) throw ValidationError("spatial_dim must be 1");
  if (!(spec.sup_guard > 0.0)) throw ValidationError("sup_guard must be > 0");
  const GridPtr grid = spec.make_grid();  // checks box and point count

  for (int i = 0; i < spec.N; ++i) {
    Field a = [&] {
      try {
        return Field::sample(grid, spec.coeffs[static_cast<std::size_t>(i)]);
      } catch (const NonFiniteError& e) {
        throw ValidationError("coefficient a_" + std::to_string(i) +
                              " has a non-finite sample: " + e.what());
      }
    }();
    // Smoothness can only be probed: sampled differences up to order 4 must stay finite.
    for (int k = 1; k <= 4; ++k) {
      const auto d = forward_difference(a, k);
      if (!std::all_of(d.begin(), d.end(), [](double v) { return std::isfinite(v); })) {
        throw ValidationError("coefficient a_" + std::to_string(i) + " has a non-finite order-" +
                              std::to_string(k) + " difference");
      }
    }
  }
}

ProblemSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("problem spec must be a JSON object");
  ProblemSpec spec;
  try {
    for (const auto& [key, value] : j.items()) {
      if (!kSpecKeys.contains(key) && !is_coefficient_key(key)) {
        throw ValidationError("unknown spec field '" + key + "'");
      }
    }
    if (!j.contains("N")) throw ValidationError("missing field 'N'");
    spec.N = j.at("N").get<int>();
    if (spec.N < 2) throw ValidationError("N >= 2 required (got " + std::to_string(spec.N) + ")");

    spec.coeffs.clear();
    if (j.contains("coeffs")) {
      const auto& arr = j.at("coeffs");
      if (!arr.is_array()) throw ValidationError("coeffs must be an array");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        spec.coeffs.push_back(parse_coefficient(arr[i], static_cast<int>(i)));
      }
    } else {
      // a_i keys; absent ones default to 0.
      int highest = -1;
      for (const auto& [key, value] : j.items()) {
        if (is_coefficient_key(key)) highest = std::max(highest, std::stoi(key.substr(2)));
      }
      const int count = std::max(spec.N, highest + 1);
      for (int i = 0; i < count; ++i) {
        const std::string key = "a_" + std::to_string(i);
        spec.coeffs.push_back(j.contains(key) ? parse_coefficient(j.at(key), i) : Expr::literal(0.0));
      }
    }

    if (j.contains("box_half_length")) spec.box_half_length = j.at("box_half_length").get<double>();
    if (j.contains("grid_points")) {
      const auto m = j.at("grid_points").get<long long>();
      if (m < 8) throw ValidationError("grid_points >= 8 required");
      spec.grid_points = static_cast<std::size_t>(m);
    }
    if (j.contains("boundary")) spec.boundary = parse_boundary(j.at("boundary").get<std::string>());
    if (j.contains("signed_power")) spec.signed_power = j.at("signed_power").get<bool>();
    if (j.contains("sup_guard")) spec.sup_guard = j.at("sup_guard").get<double>();
    if (j.contains("spatial_dim")) spec.spatial_dim = j.at("spatial_dim").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed problem spec: ") + e.what());
  }
  validate(spec);
  return spec;
}

ProblemSpec load_spec(std::string_view config_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(config_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  return spec_from_json(j);
}

nlohmann::json spec_to_json(const ProblemSpec& spec) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const Expr& e : spec.coeffs) coeffs.push_back(e.print());
  return {
      {"N", spec.N},
      {"coeffs", coeffs},
      {"box_half_length", spec.box_half_length},
      {"grid_points", spec.grid_points},
      {"boundary", std::string(boundary_name(spec.boundary))},
      {"signed_power", spec.signed_power},
      {"sup_guard", spec.sup_guard},
      {"spatial_dim", spec.spatial_dim},
  };
}

std::string canonical_text(const ProblemSpec& spec) { return spec_to_json(spec).dump(2); }

std::vector<CoefficientNorm> coefficient_norms(const ProblemSpec& spec) {
  const GridPtr grid = spec.make_grid();
  std::vector<CoefficientNorm> out;
  for (const Expr& e : spec.coeffs) {
    const Field a = Field::sample(grid, e);
    std::vector<double> absval(a.values().begin(), a.values().end());
    for (double& v : absval) v = std::abs(v);
    out.push_back({integrate(Field(grid, std::move(absval))), sup_norm(a)});
  }
  return out;
}

std::vector<std::string> hypothesis_notes(const ProblemSpec& spec) {
  const GridPtr grid = spec.make_grid();
  std::vector<std::string> notes;
  for (std::size_t i = 0; i < spec.coeffs.size(); ++i) {
    const Field a = Field::sample(grid, spec.coeffs[i]);
    const double linf = sup_norm(a);
    const double edge = std::max(std::abs(a[0]), std::abs(a[a.size() - 1]));
    if (linf > 0.0 && edge > 1e-8 * linf) {
      notes.push_back("a_" + std::to_string(i) +
                      " does not decay at the box edge; it is integrable only on the truncated box");
    }
  }
  return notes;
}

}  // namespace gradflow
