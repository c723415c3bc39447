#include <iostream>

#include <CLI11.hpp>

#include "gradflow/app.hpp"

int main(int argc, char** argv) {
  using namespace gradflow::app;
  CLI::App cli{"gradflow: semilinear gradient-flow experiments"};
  cli.require_subcommand(1);

  std::string config;
  std::string output_dir;
  CommandOptions opts;

  struct Entry {
    const char* name;
    const char* help;
    int (*fn)(const std::filesystem::path&, const CommandOptions&, std::ostream&, std::ostream&);
  };
  const Entry entries[] = {
      {"simulate", "integrate the flow from the configured initial data", cmd_simulate},
      {"equilibria", "build the equilibrium catalog", cmd_equilibria},
      {"connect", "run a launch plan and check connection bounds", cmd_connect},
      {"verify", "run the verification suites", cmd_verify},
  };
  for (const Entry& e : entries) {
    CLI::App* sub = cli.add_subcommand(e.name, e.help);
    sub->add_option("config", config, "experiment JSON file")->required();
    sub->add_option("--output-dir", output_dir, "overrides output_dir from the config");
    sub->add_flag("--quiet", opts.quiet, "suppress progress output");
  }

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = cli.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }
  if (!output_dir.empty()) opts.output_dir = output_dir;

  for (const Entry& e : entries) {
    if (cli.got_subcommand(e.name)) return e.fn(config, opts, std::cout, std::cerr);
  }
  return kConfigError;
}
