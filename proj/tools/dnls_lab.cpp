// dnls-lab <scenario> --config <path> [--seed N] [--out DIR]

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dnls/cli/run.hpp"
#include "dnls/cli/scenarios.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Batch experiments for the derivative NLS lab"};
  std::string scenario;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = "dnls-lab-out";
  app.add_option("scenario", scenario, "Scenario to run")
      ->required()
      ->check(CLI::IsMember(dnls::cli::scenario_names()));
  app.add_option("--config", config, "JSON configuration file")->required();
  app.add_option("--seed", seed, "Override the configured seed");
  app.add_option("--out", out, "Output directory; runs go to <out>/runs/NNNN");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return dnls::cli::kSchemaError;
  }
  return dnls::cli::run_cli(scenario, config, seed, out, std::cout, std::cerr);
}
