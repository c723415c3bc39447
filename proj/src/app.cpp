#include "gradflow/app.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "gradflow/equilibria.hpp"
#include "gradflow/errors.hpp"
#include "gradflow/mms.hpp"
#include "gradflow/sampling.hpp"

namespace gradflow::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::set<std::string> kConfigKeys{
    "description", "spec",   "control", "stop",       "initial_condition", "t_max",
    "snapshot_stride", "output_dir", "seed", "action_convention", "equilibria", "connect",
    "verify"};

const std::set<std::string> kControlKeys{"dt_init",         "dt_min",    "dt_max", "safety",
                                         "increment_limit", "sup_guard", "smooth_steps_to_grow"};

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("field '") + key + "': " + e.what());
  }
}

StepControl control_from_json(const json& j, StepControl c) {
  if (j.is_null()) return c;
  if (!j.is_object()) throw ValidationError("control must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!kControlKeys.contains(key)) throw ValidationError("unknown control field '" + key + "'");
  }
  c.dt_init = get_or(j, "dt_init", c.dt_init);
  c.dt_min = get_or(j, "dt_min", c.dt_min);
  c.dt_max = get_or(j, "dt_max", c.dt_max);
  c.safety = get_or(j, "safety", c.safety);
  c.increment_limit = get_or(j, "increment_limit", c.increment_limit);
  c.sup_guard = get_or(j, "sup_guard", c.sup_guard);
  c.smooth_steps_to_grow = get_or(j, "smooth_steps_to_grow", c.smooth_steps_to_grow);
  c.validate();
  return c;
}

Expr parse_expr_field(const std::string& text, const char* what) {
  try {
    return Expr::parse(text);
  } catch (const Error& e) {
    throw ValidationError(std::string(what) + ": " + e.what());
  }
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot write " + path.string());
  os << j.dump(2) << '\n';
}

fs::path prepare_output(const RunConfig& cfg, const CommandOptions& opts) {
  fs::path dir = opts.output_dir ? *opts.output_dir : cfg.output_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ValidationError("output_dir not writable: " + dir.string());
  return dir;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// Runs a command body, mapping configuration failures to exit code 1.
template <class Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const json::exception& e) {
    err << "config error: " << e.what() << '\n';
  }
  return kConfigError;
}

struct Catalog {
  std::vector<Equilibrium> entries;
  json errors = json::array();
  json rejected = json::array();
};

Catalog build_catalog(const RunConfig& cfg) {
  const json section = cfg.raw.value("equilibria", json::object());
  const Nonlinearity nl = Nonlinearity::from_spec(cfg.spec);
  Catalog cat;

  auto add = [&](Equilibrium eq, const std::string& origin) {
    for (const Equilibrium& e : cat.entries) {
      if (sup_distance(e.field, eq.field) < 1e-8) {
        cat.rejected.push_back(origin + ": duplicate of an existing entry");
        return;
      }
    }
    try {
      (void)action(nl, eq.field);
    } catch (const RangeError&) {
      cat.rejected.push_back(origin + ": non-finite action");
      return;
    }
    cat.entries.push_back(std::move(eq));
  };

  if (get_or(section, "constant", true)) {
    try {
      std::vector<std::string> rejected;
      for (Equilibrium& eq : constant_equilibria(nl, &rejected)) {
        add(std::move(eq), "constant root");
      }
      for (auto& r : rejected) cat.rejected.push_back(r);
    } catch (const ValidationError& e) {
      cat.errors.push_back({{"stage", "constant"}, {"error", e.what()}});
    }
  }

  NewtonOptions newton;
  newton.max_iter = get_or(section, "newton_max_iter", newton.max_iter);
  for (const auto& g : section.value("newton_guesses", json::array())) {
    const std::string text = g.get<std::string>();
    try {
      const Field guess = Field::sample(nl.grid_ptr(), parse_expr_field(text, "newton guess"));
      add(newton_refine(nl, guess, newton), "newton guess '" + text + "'");
    } catch (const Error& e) {
      cat.errors.push_back({{"stage", "newton"}, {"guess", text}, {"error", e.what()}});
    }
  }

  if (section.contains("shooting")) {
    const json& sh = section.at("shooting");
    const double slope = get_or(sh, "slope_left", 0.0);
    const SpatialGrid& g = *nl.grid_ptr();
    NewtonOptions polish = newton;
    polish.tol = kShootingTolerance;
    for (const auto& ul : sh.value("u_left", json::array())) {
      const double u_left = ul.get<double>();
      const ShootResult path = shoot(nl, u_left, slope, g.x(0), g.x(g.size() - 1),
                                     {0.0, cfg.spec.sup_guard});
      if (path.escaped) {
        cat.errors.push_back({{"stage", "shooting"},
                              {"u_left", u_left},
                              {"error", "path escaped"},
                              {"direction", path.escape_direction},
                              {"x", path.escape_x}});
        continue;
      }
      std::vector<double> samples(g.size());
      for (std::size_t j = 0; j < g.size(); ++j) samples[j] = path.path[std::min(4 * j, path.path.size() - 1)].u;
      try {
        Equilibrium eq = newton_refine(nl, samples, polish);
        eq.source = EquilibriumSource::shooting;
        add(std::move(eq), "shooting from u_left=" + format_double(u_left));
      } catch (const Error& e) {
        cat.errors.push_back({{"stage", "shooting"}, {"u_left", u_left}, {"error", e.what()}});
      }
    }
  }

  const double lo = section.contains("bounds") ? section.at("bounds").at(0).get<double>() : -cfg.spec.sup_guard;
  const double hi = section.contains("bounds") ? section.at("bounds").at(1).get<double>() : cfg.spec.sup_guard;
  for (Equilibrium& eq : cat.entries) {
    const Boundedness b = classify_boundedness(eq, lo, hi);
    eq.bounded_below = b.bounded_below;
    eq.bounded_above = b.bounded_above;
  }
  std::stable_sort(cat.entries.begin(), cat.entries.end(), [](const Equilibrium& a, const Equilibrium& b) {
    if (a.constant_value && b.constant_value) return *a.constant_value < *b.constant_value;
    return a.constant_value.has_value() && !b.constant_value.has_value();
  });
  return cat;
}

LaunchPlanEntry plan_entry_from_json(const json& j) {
  LaunchPlanEntry e;
  const std::string type = get_or<std::string>(j, "type", "connection");
  if (type == "connection") {
    e.kind = LaunchPlanEntry::Kind::connection;
    e.from = get_or<std::size_t>(j, "from", 0);
    e.amplitude = get_or(j, "amplitude", e.amplitude);
  } else if (type == "front") {
    e.kind = LaunchPlanEntry::Kind::front;
    if (j.contains("spec")) e.problem = spec_from_json(j.at("spec"));
    e.initial_condition = parse_expr_field(get_or<std::string>(j, "initial_condition", ""),
                                           "front initial_condition");
    e.window_fraction = get_or(j, "window_fraction", e.window_fraction);
    e.min_fit_quality = get_or(j, "min_fit_quality", e.min_fit_quality);
  } else {
    throw ValidationError("plan entry type must be 'connection' or 'front'");
  }
  e.t_max = get_or(j, "t_max", e.t_max);
  return e;
}

}  // namespace

std::string snapshot_filename(double t) { return "snap_" + format_double(t) + ".csv"; }

RunConfig parse_run_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kConfigKeys.contains(key)) throw ValidationError("unknown config field '" + key + "'");
  }
  if (!j.contains("spec")) throw ValidationError("missing field 'spec'");

  RunConfig cfg;
  cfg.raw = j;
  cfg.spec = spec_from_json(j.at("spec"));
  StepControl base;
  base.sup_guard = cfg.spec.sup_guard;
  cfg.control = control_from_json(j.value("control", json()), base);
  if (j.contains("stop")) cfg.stop.tol_eq = get_or(j.at("stop"), "tol_eq", cfg.stop.tol_eq);
  cfg.initial_condition = get_or<std::string>(j, "initial_condition", cfg.initial_condition);
  parse_expr_field(cfg.initial_condition, "initial_condition");
  cfg.t_max = get_or(j, "t_max", cfg.t_max);
  if (!(cfg.t_max > 0.0)) throw ValidationError("t_max must be > 0");
  cfg.snapshot_stride = get_or<std::size_t>(j, "snapshot_stride", cfg.snapshot_stride);
  if (cfg.snapshot_stride == 0) throw ValidationError("snapshot_stride must be >= 1");
  cfg.output_dir = get_or<std::string>(j, "output_dir", cfg.output_dir.string());
  cfg.seed = get_or<std::uint64_t>(j, "seed", cfg.seed);
  const std::string conv = get_or<std::string>(j, "action_convention", "gradient_flow");
  if (conv == "gradient_flow") {
    cfg.action_convention = ActionConvention::gradient_flow;
  } else if (conv == "flipped_dirichlet") {
    cfg.action_convention = ActionConvention::flipped_dirichlet;
  } else {
    throw ValidationError("action_convention must be gradient_flow or flipped_dirichlet");
  }
  return cfg;
}

RunConfig load_run_config(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot read config " + path.string());
  std::stringstream buf;
  buf << is.rdbuf();
  return parse_run_config(buf.str());
}

int cmd_simulate(const fs::path& config, const CommandOptions& opts, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_run_config(config);
    const Nonlinearity nl = Nonlinearity::from_spec(cfg.spec);
    const Field u0 = Field::sample(nl.grid_ptr(), parse_expr_field(cfg.initial_condition, "initial_condition"));
    const fs::path dir = prepare_output(cfg, opts);

    const Trajectory traj = run(nl, u0, cfg.control, cfg.stop, {cfg.t_max, cfg.snapshot_stride});

    {
      std::ofstream os(dir / "diagnostics.csv");
      write_diagnostics_csv(os, traj);
    }
    for (const Snapshot& s : traj.snapshots()) {
      std::ofstream os(dir / snapshot_filename(s.t));
      write_field_csv(os, s.u);
    }
    const DiagnosticRow& last = traj.diagnostics().back();
    json summary{
        {"status", status_name(traj.status())},
        {"t_final", traj.final_time()},
        {"steps", traj.diagnostics().size() - 1},
        {"final_sup_norm", sup_norm(traj.final_state())},
        {"final_action", last.action},
        {"energy", last.energy_cum},
        {"final_ut_sup", last.ut_sup},
        {"snapshots", traj.snapshots().size()},
        {"spec", spec_to_json(cfg.spec)},
        {"hypothesis_notes", hypothesis_notes(cfg.spec)},
        {"seed", cfg.seed},
        {"action_convention",
         cfg.action_convention == ActionConvention::gradient_flow ? "gradient_flow" : "flipped_dirichlet"},
    };
    if (cfg.action_convention == ActionConvention::flipped_dirichlet) {
      summary["flipped_dirichlet_action"] = {
          {"initial", finite_or_null(action(nl, traj.snapshots().front().u, ActionConvention::flipped_dirichlet).value)},
          {"final", finite_or_null(action(nl, traj.final_state(), ActionConvention::flipped_dirichlet).value)}};
    }
    if (traj.blow_up()) {
      const BlowUp& b = *traj.blow_up();
      summary["blow_up"] = {{"t", b.t}, {"sup_norm", finite_or_null(b.sup_norm)}, {"sign", b.sign},
                            {"dt_collapse", b.dt_collapse}};
    } else {
      summary["blow_up"] = nullptr;
    }
    write_json(dir / "summary.json", summary);
    if (!opts.quiet) {
      out << "status " << status_name(traj.status()) << " at t=" << traj.final_time()
          << ", energy " << last.energy_cum << ", output in " << dir.string() << '\n';
    }
    return traj.status() == RunStatus::blow_up ? kBlowUp : kSuccess;
  });
}

int cmd_equilibria(const fs::path& config, const CommandOptions& opts, std::ostream& out,
                   std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_run_config(config);
    const fs::path dir = prepare_output(cfg, opts);
    const Catalog cat = build_catalog(cfg);
    json entries = json::array();
    for (std::size_t i = 0; i < cat.entries.size(); ++i) {
      const Equilibrium& eq = cat.entries[i];
      const std::string file = "equilibrium_" + std::to_string(i) + ".csv";
      std::ofstream os(dir / file);
      write_field_csv(os, eq.field);
      json e{{"index", i},
             {"source", source_name(eq.source)},
             {"residual", eq.residual},
             {"action", eq.action},
             {"bounded_below", eq.bounded_below},
             {"bounded_above", eq.bounded_above},
             {"snapshot", file}};
      if (eq.constant_value) e["value"] = *eq.constant_value;
      entries.push_back(e);
    }
    write_json(dir / "equilibria.json",
               {{"equilibria", entries}, {"errors", cat.errors}, {"rejected", cat.rejected}});
    if (!opts.quiet) {
      out << cat.entries.size() << " equilibria, " << cat.errors.size() << " failed entries\n";
    }
    return kSuccess;
  });
}

int cmd_connect(const fs::path& config, const CommandOptions& opts, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_run_config(config);
    const json section = cfg.raw.value("connect", json::object());
    ConnectionOptions copts;
    copts.match_tol = get_or(section, "match_tol", copts.match_tol);
    copts.tail_tol = get_or(section, "tail_tol", copts.tail_tol);
    copts.tail_fraction = get_or(section, "tail_fraction", copts.tail_fraction);
    copts.identity_rel_tol = get_or(section, "identity_rel_tol", copts.identity_rel_tol);
    copts.identity_abs_tol = get_or(section, "identity_abs_tol", copts.identity_abs_tol);
    copts.snapshot_stride = cfg.snapshot_stride;
    std::vector<LaunchPlanEntry> plan;
    for (const auto& e : section.value("plan", json::array())) plan.push_back(plan_entry_from_json(e));
    const fs::path dir = prepare_output(cfg, opts);

    const Catalog cat = build_catalog(cfg);
    const std::vector<LaunchRow> rows =
        verify_launch_plan(cfg.spec, cat.entries, plan, cfg.control, cfg.stop, copts);
    {
      std::ofstream os(dir / "connections.csv");
      write_launch_csv(os, rows);
    }
    bool ok = true;
    json verdicts = json::array();
    for (const LaunchRow& r : rows) {
      ok = ok && (r.verdict == "pass" || r.verdict == "excluded");
      verdicts.push_back({{"launch_id", r.launch_id},
                          {"kind", r.kind == LaunchPlanEntry::Kind::front ? "front" : "connection"},
                          {"status", connection_status_name(r.status)},
                          {"verdict", r.verdict},
                          {"growth_rate", finite_or_null(r.growth_rate)},
                          {"fit_quality", finite_or_null(r.fit_quality)},
                          {"note", r.note}});
    }
    write_json(dir / "connections_summary.json", {{"passed", ok}, {"rows", verdicts}});
    if (!opts.quiet) {
      for (const LaunchRow& r : rows) {
        out << "launch " << r.launch_id << ": " << connection_status_name(r.status) << " -> "
            << r.verdict << " (" << r.note << ")\n";
      }
    }
    return ok ? kSuccess : kVerificationFailure;
  });
}

int cmd_verify(const fs::path& config, const CommandOptions& opts, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_run_config(config);
    const json section = cfg.raw.value("verify", json::object());
    std::vector<std::string> names{"mms", "monotonicity", "identity", "reaction_ratio", "blowup"};
    if (section.contains("suites")) names = section.at("suites").get<std::vector<std::string>>();
    for (const std::string& n : names) {
      if (n != "mms" && n != "monotonicity" && n != "identity" && n != "reaction_ratio" && n != "blowup") {
        throw ValidationError("unknown verification suite '" + n + "'");
      }
    }
    const fs::path dir = prepare_output(cfg, opts);

    json suites = json::array();
    bool ok = true;
    for (const std::string& n : names) {
      const json params = section.value(n, json::object());
      json result;
      if (n == "mms") result = suite_mms(cfg, params);
      if (n == "monotonicity") result = suite_monotonicity(cfg, params);
      if (n == "identity") result = suite_identity(cfg, params);
      if (n == "reaction_ratio") result = suite_reaction_ratio(cfg, params);
      if (n == "blowup") result = suite_blowup(cfg, params);
      ok = ok && result.at("passed").get<bool>();
      if (!opts.quiet) out << n << ": " << (result.at("passed").get<bool>() ? "pass" : "FAIL") << '\n';
      suites.push_back(std::move(result));
    }
    write_json(dir / "verify_report.json", {{"passed", ok}, {"seed", cfg.seed}, {"suites", suites}});
    return ok ? kSuccess : kVerificationFailure;
  });
}

json suite_mms(const RunConfig& cfg, const json& params) {
  const json m = params.value("manufactured", json::object());
  const Manufactured man{parse_expr_field(get_or<std::string>(m, "space", "exp(-x^2)"), "mms space"),
                         parse_expr_field(get_or<std::string>(m, "time", "exp(-x)"), "mms time")};
  MmsOptions o;
  o.t_final = get_or(params, "t_final", o.t_final);
  o.dt0 = get_or(params, "dt0", o.dt0);
  ProblemSpec spec = cfg.spec;
  if (params.contains("spec")) spec = spec_from_json(params.at("spec"));
  const MmsReport r = mms_verify(spec, man, get_or(params, "refinements", 3), o);
  json levels_t = json::array();
  json levels_s = json::array();
  for (const auto& l : r.temporal) levels_t.push_back({{"points", l.points}, {"dt", l.dt}, {"error", l.error}});
  for (const auto& l : r.spatial) levels_s.push_back({{"points", l.points}, {"h", l.h}, {"error", l.error}});
  return {{"name", "mms"},
          {"passed", r.passed},
          {"temporal_order", finite_or_null(r.temporal_order)},
          {"spatial_order", finite_or_null(r.spatial_order)},
          {"exact", r.exact},
          {"temporal_ladder", levels_t},
          {"spatial_ladder", levels_s},
          {"message", r.message}};
}

json suite_monotonicity(const RunConfig& cfg, const json& params) {
  std::vector<ProblemSpec> specs;
  if (params.contains("specs")) {
    for (const auto& s : params.at("specs")) specs.push_back(spec_from_json(s));
  } else {
    specs.push_back(cfg.spec);
  }
  const int runs = get_or(params, "runs", 20);
  const double lo = get_or(params, "initial_lo", 0.35);
  const double hi = get_or(params, "initial_hi", 1.0);
  const double wiggle = get_or(params, "wiggle", 0.3);
  const double t_max = get_or(params, "t_max", cfg.t_max);
  const StepControl ctrl = control_from_json(params.value("control", json()), cfg.control);
  Sampler rng(cfg.seed);

  std::size_t steps = 0, violations = 0;
  double worst = -std::numeric_limits<double>::infinity();
  json per_run = json::array();
  for (const ProblemSpec& spec : specs) {
    const Nonlinearity nl = Nonlinearity::from_spec(spec);
    for (int r = 0; r < runs; ++r) {
      const Field u0 = random_initial_data(nl.grid_ptr(), rng, lo, hi, wiggle);
      const Trajectory traj = run(nl, u0, ctrl, cfg.stop, {t_max, 1u << 30});
      const MonotonicityReport rep = check_action_monotonicity(traj);
      steps += rep.steps_checked;
      violations += rep.violations;
      worst = std::max(worst, rep.worst_drop);
      per_run.push_back({{"status", status_name(traj.status())},
                         {"steps", rep.steps_checked},
                         {"violations", rep.violations}});
    }
  }
  return {{"name", "monotonicity"},
          {"passed", violations == 0},
          {"steps_checked", steps},
          {"violations", violations},
          {"worst_drop", finite_or_null(worst)},
          {"runs", per_run}};
}

json suite_identity(const RunConfig& cfg, const json& params) {
  const Nonlinearity nl = Nonlinearity::from_spec(cfg.spec);
  const Field u0 = Field::sample(nl.grid_ptr(), parse_expr_field(cfg.initial_condition, "initial_condition"));
  const double t_max = get_or(params, "t_max", cfg.t_max);
  const double rel = get_or(params, "rel_tol", 0.02);
  const double abs_tol = get_or(params, "abs_tol", 1e-6);
  const Trajectory traj = run(nl, u0, cfg.control, cfg.stop, {t_max, cfg.snapshot_stride});
  const double residual = identity_residual(traj, nl);
  const double gap = traj.diagnostics().back().action - traj.diagnostics().front().action;
  const bool ok = traj.status() != RunStatus::blow_up && residual <= std::max(rel * std::abs(gap), abs_tol);
  return {{"name", "identity"},
          {"passed", ok},
          {"status", status_name(traj.status())},
          {"energy", traj.diagnostics().back().energy_cum},
          {"action_gap", gap},
          {"residual", residual}};
}

json suite_reaction_ratio(const RunConfig& cfg, const json& params) {
  const int samples = get_or(params, "samples", 1000);
  const double bound_c = get_or(params, "sup_bound", 1.0);
  const std::uint64_t seed = get_or(params, "seed", cfg.seed);
  const Nonlinearity nl =
      Nonlinearity::from_spec(params.contains("spec") ? spec_from_json(params.at("spec")) : cfg.spec);
  json cases = params.value("cases", json::array({{{"k", 0}, {"p", 2.0}},
                                                  {{"k", 1}, {"p", 2.0}},
                                                  {{"k", 2}, {"p", 2.0}},
                                                  {{"k", 1}, {"p", 4.0}}}));
  bool ok = true;
  json out = json::array();
  for (const auto& c : cases) {
    const int k = c.at("k").get<int>();
    const double p = c.at("p").get<double>();
    Sampler rng(seed + static_cast<std::uint64_t>(k) * 1000 + static_cast<std::uint64_t>(p));
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
      const Field u = random_smooth_field(nl.grid_ptr(), rng, k, bound_c);
      worst = std::max(worst, reaction_ratio(nl, u, k, p));
    }
    json row{{"k", k}, {"p", p}, {"max_ratio", worst}};
    if (c.contains("bound")) {
      const bool pass = worst <= c.at("bound").get<double>();
      row["bound"] = c.at("bound");
      row["passed"] = pass;
      ok = ok && pass;
    } else {
      row["passed"] = true;
      row["frozen"] = false;
    }
    out.push_back(row);
  }
  return {{"name", "reaction_ratio"}, {"passed", ok}, {"samples", samples}, {"cases", out}};
}

json suite_blowup(const RunConfig& cfg, const json& params) {
  const double c = get_or(params, "c", 1.0);
  const double rel = get_or(params, "rel_tol", 0.05);
  ProblemSpec spec;
  spec.N = 2;
  spec.coeffs = {Expr::literal(0.0), Expr::literal(0.0)};
  spec.box_half_length = 1.0;
  spec.grid_points = 16;
  spec.boundary = Boundary::periodic;
  StepControl ctrl = control_from_json(params.value("control", json()), StepControl{});
  const Nonlinearity nl = Nonlinearity::from_spec(spec);
  const Trajectory traj = run(nl, Field::constant(nl.grid_ptr(), -c), ctrl, cfg.stop, {10.0 / c, 1u << 30});
  const double expected = 1.0 / c;
  const bool blew = traj.status() == RunStatus::blow_up;
  const double t = blew ? traj.blow_up()->t : traj.final_time();
  const bool ok = blew && std::abs(t - expected) <= rel * expected && traj.blow_up()->sign < 0;
  return {{"name", "blowup"},
          {"passed", ok},
          {"status", status_name(traj.status())},
          {"detected_t", t},
          {"expected_t", expected},
          {"relative_error", std::abs(t - expected) / expected}};
}

}  // namespace gradflow::app
