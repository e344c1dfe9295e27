#include <CLI11.hpp>
#include <iostream>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace ghostlab::cli;

  CLI::App app{"ghostlab: nonuniformly elliptic variational experiments"};
  app.require_subcommand(1);

  RunOptions options;
  const char* commands[][2] = {
      {"classify", "classify (p, q, alpha, n) tuples against the sharp threshold"},
      {"sweep", "double-phase threshold sweep: solve, then measure regularity per q"},
      {"moser", "integrability exponent sequence"},
      {"metrics", "Caccioppoli and Hölder fits on a stored field"},
      {"colimit", "validate a claim DAG and glue its payloads"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", options.config, "INI config file")->required();
    sub->add_option("--out", options.out_dir, "output directory")->capture_default_str();
    sub->add_option("--seed", options.seed, "seed for randomized inputs")->capture_default_str();
    sub->add_option("--threads", options.threads, "worker threads for sweeps")->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  return run_command(app.get_subcommands().front()->get_name(), options, std::cout, std::cerr);
}
