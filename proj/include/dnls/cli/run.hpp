#pragma once

// One experiment run: configuration -> validated plan -> artifacts + exit code.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "dnls/cli/schema.hpp"

namespace dnls::cli {

enum ExitCode : int { kPass = 0, kAssertionFailed = 1, kSchemaError = 2 };

// Top-level configuration: {"name", "scenario", "seed", "parameters"}.
struct ExperimentSpec {
  std::string name;
  std::string scenario;
  std::uint64_t seed = 1;
  std::filesystem::path out = "dnls-lab-out";
};

struct RunOutcome {
  int exit_code = kPass;
  std::filesystem::path run_dir;  // empty when nothing was written
  std::string message;            // schema error or failing metrics
  nlohmann::ordered_json report;  // null on schema errors
};

// Validates the document against the scenario schema (exit 2 on violation),
// then executes it. With write = false no files are produced.
RunOutcome run_experiment(const std::string& scenario, const ConfigDoc& doc,
                          std::optional<std::uint64_t> seed_override,
                          const std::filesystem::path& out, bool write = true);

// Command-line entry used by the dnls-lab tool; prints a summary to `log`
// and errors to `err`.
int run_cli(const std::string& scenario, const std::string& config_path,
            std::optional<std::uint64_t> seed_override, const std::filesystem::path& out,
            std::ostream& log, std::ostream& err);

}  // namespace dnls::cli
