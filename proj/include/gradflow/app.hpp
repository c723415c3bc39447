#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gradflow/connections.hpp"
#include "gradflow/dynamics.hpp"
#include "gradflow/problem.hpp"

namespace gradflow::app {

/// Stable process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 1,
  kBlowUp = 2,
  kVerificationFailure = 3,
};

/// One experiment file. `raw` keeps the parsed JSON so command-specific
/// sections (equilibria, connect, verify) are read by their commands.
struct RunConfig {
  ProblemSpec spec;
  StepControl control;
  StopRule stop;
  std::string initial_condition = "0";
  double t_max = 10.0;
  std::size_t snapshot_stride = 64;
  std::filesystem::path output_dir = "gradflow_out";
  std::uint64_t seed = 0;
  ActionConvention action_convention = ActionConvention::gradient_flow;
  nlohmann::json raw;
};

/// Throws ValidationError for any invalid or unknown field.
RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::filesystem::path& path);

struct CommandOptions {
  std::optional<std::filesystem::path> output_dir;
  bool quiet = false;
};

int cmd_simulate(const std::filesystem::path& config, const CommandOptions& opts,
                 std::ostream& out, std::ostream& err);
int cmd_equilibria(const std::filesystem::path& config, const CommandOptions& opts,
                   std::ostream& out, std::ostream& err);
int cmd_connect(const std::filesystem::path& config, const CommandOptions& opts,
                std::ostream& out, std::ostream& err);
int cmd_verify(const std::filesystem::path& config, const CommandOptions& opts,
               std::ostream& out, std::ostream& err);

/// Built-in verification suites (also used by cmd_verify). Each returns a
/// JSON object with at least `name` and `passed`.
nlohmann::json suite_mms(const RunConfig& cfg, const nlohmann::json& params);
nlohmann::json suite_monotonicity(const RunConfig& cfg, const nlohmann::json& params);
nlohmann::json suite_identity(const RunConfig& cfg, const nlohmann::json& params);
nlohmann::json suite_reaction_ratio(const RunConfig& cfg, const nlohmann::json& params);
nlohmann::json suite_blowup(const RunConfig& cfg, const nlohmann::json& params);

/// `snap_<t>.csv` with t in shortest round-trip form.
std::string snapshot_filename(double t);

}  // namespace gradflow::app
