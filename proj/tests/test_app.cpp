#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gradflow/app.hpp"
#include "gradflow/errors.hpp"

using namespace gradflow;
using namespace gradflow::app;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Workspace {
  fs::path dir;
  explicit Workspace(const std::string& name) : dir(fs::temp_directory_path() / ("gradflow_test_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }

  fs::path write(const std::string& file, const json& j) const { return write(file, j.dump()); }
  fs::path write(const std::string& file, const std::string& text) const {
    std::ofstream(dir / file) << text;
    return dir / file;
  }
  CommandOptions opts(const std::string& sub) const { return {dir / sub, true}; }
};

json fisher_config() {
  return {{"spec", {{"N", 2}, {"coeffs", {"0", "1"}}, {"grid_points", 64}}},
          {"initial_condition", "0.5"},
          {"t_max", 40.0},
          {"snapshot_stride", 500}};
}

json read_json(const fs::path& p) {
  std::ifstream is(p);
  return json::parse(is);
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("run config parsing") {
  const RunConfig cfg = parse_run_config(fisher_config().dump());
  CHECK(cfg.spec.N == 2);
  CHECK(cfg.t_max == 40.0);
  CHECK(cfg.control.sup_guard == cfg.spec.sup_guard);
  json bad = fisher_config();
  bad["colour"] = "red";
  CHECK_THROWS_AS(parse_run_config(bad.dump()), ValidationError);
  bad = fisher_config();
  bad["control"] = {{"dt_init", 1.0}, {"dt_max", 0.1}};
  CHECK_THROWS_AS(parse_run_config(bad.dump()), ValidationError);
  bad = fisher_config();
  bad["initial_condition"] = "exp(";
  CHECK_THROWS_AS(parse_run_config(bad.dump()), ValidationError);
  bad = fisher_config();
  bad["action_convention"] = "other";
  CHECK_THROWS_AS(parse_run_config(bad.dump()), ValidationError);
  CHECK_THROWS_AS(parse_run_config("{\"spec\": "), ValidationError);
  CHECK(snapshot_filename(0.5) == "snap_0.5.csv");
  CHECK(snapshot_filename(0.0) == "snap_0.csv");
}

TEST_CASE("simulate exit codes and outputs") {
  Workspace ws("simulate");
  std::ostringstream out, err;
  const fs::path ok = ws.write("fisher.json", fisher_config());
  CHECK(cmd_simulate(ok, ws.opts("a"), out, err) == kSuccess);
  const json summary = read_json(ws.dir / "a" / "summary.json");
  CHECK(summary["status"] == "converged");
  CHECK(summary["blow_up"].is_null());
  CHECK(fs::exists(ws.dir / "a" / "diagnostics.csv"));
  CHECK(fs::exists(ws.dir / "a" / "snap_0.csv"));
  CHECK(slurp(ws.dir / "a" / "diagnostics.csv").rfind("t,dt,sup_norm,action,energy_cum,ut_sup\n", 0) == 0);

  CHECK(cmd_simulate(ok, ws.opts("b"), out, err) == kSuccess);
  for (const auto& entry : fs::directory_iterator(ws.dir / "a")) {
    CHECK(slurp(entry.path()) == slurp(ws.dir / "b" / entry.path().filename()));
  }

  json n1 = fisher_config();
  n1["spec"]["N"] = 1;
  n1["spec"]["coeffs"] = {"0"};
  CHECK(cmd_simulate(ws.write("n1.json", n1), ws.opts("c"), out, err) == kConfigError);
  CHECK(err.str().find("N >= 2") != std::string::npos);

  json blow = fisher_config();
  blow["spec"] = {{"N", 2}, {"coeffs", {"0", "0"}}, {"grid_points", 16}};
  blow["initial_condition"] = "-1";
  CHECK(cmd_simulate(ws.write("blow.json", blow), ws.opts("d"), out, err) == kBlowUp);
  CHECK(read_json(ws.dir / "d" / "summary.json")["blow_up"]["sign"] == -1);

  CHECK(cmd_simulate(ws.dir / "missing.json", ws.opts("e"), out, err) == kConfigError);
  CHECK(cmd_simulate(ws.write("corrupt.json", std::string("{\"spec\": [")), ws.opts("e"), out, err) == kConfigError);

  json lit = fisher_config();
  lit["action_convention"] = "flipped_dirichlet";
  CHECK(cmd_simulate(ws.write("lit.json", lit), ws.opts("f"), out, err) == kSuccess);
  CHECK(read_json(ws.dir / "f" / "summary.json").contains("flipped_dirichlet_action"));
}

TEST_CASE("equilibria catalog files") {
  Workspace ws("equilibria");
  std::ostringstream out, err;
  json cfg = fisher_config();
  CHECK(cmd_equilibria(ws.write("f.json", cfg), ws.opts("a"), out, err) == kSuccess);
  const json cat = read_json(ws.dir / "a" / "equilibria.json");
  REQUIRE(cat["equilibria"].size() == 2);
  CHECK(cat["equilibria"][0]["value"] == 0.0);
  CHECK(cat["equilibria"][1]["value"] == 1.0);
  CHECK(fs::exists(ws.dir / "a" / cat["equilibria"][1]["snapshot"].get<std::string>()));

  json varying = fisher_config();
  varying["spec"]["coeffs"] = {"0", "1+0.5*exp(-x^2)"};
  varying["equilibria"] = {{"constant", true}, {"newton_guesses", {"1", "exp("}}};
  CHECK(cmd_equilibria(ws.write("v.json", varying), ws.opts("b"), out, err) == kSuccess);
  const json v = read_json(ws.dir / "b" / "equilibria.json");
  REQUIRE(v["errors"].size() == 2);
  CHECK(v["errors"][0]["stage"] == "constant");
  CHECK(v["errors"][1]["stage"] == "newton");
  REQUIRE(v["equilibria"].size() == 1);
  CHECK(v["equilibria"][0]["source"] == "newton");
  CHECK(v["equilibria"][0]["residual"].get<double>() < 1e-10);

  json shoot = fisher_config();
  shoot["spec"]["boundary"] = "neumann0";
  shoot["equilibria"] = {{"constant", false}, {"shooting", {{"u_left", {0.0, 1.0, 2.0}}}}};
  CHECK(cmd_equilibria(ws.write("s.json", shoot), ws.opts("c"), out, err) == kSuccess);
  const json s = read_json(ws.dir / "c" / "equilibria.json");
  CHECK(s["equilibria"].size() == 2);
  CHECK(s["errors"].size() == 1);
}

TEST_CASE("connect exit codes") {
  Workspace ws("connect");
  std::ostringstream out, err;
  json empty = fisher_config();
  CHECK(cmd_connect(ws.write("e.json", empty), ws.opts("a"), out, err) == kSuccess);
  CHECK(slurp(ws.dir / "a" / "connections.csv") ==
        "launch_id,status,from,to,total_energy,action_gap,identity_residual,tail_rate,fit_quality\n");

  json batch = fisher_config();
  batch["control"] = {{"dt_init", 1e-3}, {"dt_max", 1e-3}};
  batch["connect"] = {{"plan", {{{"type", "connection"}, {"from", 0}, {"t_max", 60}}}}};
  CHECK(cmd_connect(ws.write("b.json", batch), ws.opts("b"), out, err) == kSuccess);

  batch["connect"]["identity_rel_tol"] = 0.0;
  batch["connect"]["identity_abs_tol"] = 0.0;
  CHECK(cmd_connect(ws.write("z.json", batch), ws.opts("c"), out, err) == kVerificationFailure);

  batch["connect"] = {{"plan", {{{"type", "sideways"}}}}};
  CHECK(cmd_connect(ws.write("x.json", batch), ws.opts("d"), out, err) == kConfigError);
}

TEST_CASE("verify exit codes") {
  Workspace ws("verify");
  std::ostringstream out, err;
  json cfg = fisher_config();
  cfg["t_max"] = 3.0;
  cfg["seed"] = 5;
  cfg["verify"] = {{"suites", {"monotonicity", "identity", "blowup"}}, {"monotonicity", {{"runs", 4}, {"t_max", 3.0}}}, {"blowup", {{"control", {{"sup_guard", 1e4}}}}}};
  CHECK(cmd_verify(ws.write("v.json", cfg), ws.opts("a"), out, err) == kSuccess);
  const json report = read_json(ws.dir / "a" / "verify_report.json");
  CHECK(report["passed"] == true);
  CHECK(report["suites"].size() == 3);

  cfg["verify"]["monotonicity"]["control"] = {{"dt_init", 5.0}, {"dt_max", 5.0}, {"increment_limit", 100.0}};
  CHECK(cmd_verify(ws.write("big.json", cfg), ws.opts("b"), out, err) == kVerificationFailure);

  cfg["verify"]["suites"] = {"nonsense"};
  CHECK(cmd_verify(ws.write("u.json", cfg), ws.opts("c"), out, err) == kConfigError);
  CHECK(cmd_verify(ws.write("c.json", std::string("not json")), ws.opts("c"), out, err) == kConfigError);
}

TEST_CASE("shipped configs load") {
  for (const auto& entry : fs::directory_iterator(GRADFLOW_CONFIGS)) {
    CAPTURE(entry.path().string());
    CHECK_NOTHROW(load_run_config(entry.path()));
  }
}
