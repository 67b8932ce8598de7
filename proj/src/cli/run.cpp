#include "dnls/cli/run.hpp"

#include <chrono>

#include "dnls/cli/report.hpp"
#include "dnls/cli/scenarios.hpp"
#include "dnls/error.hpp"

namespace dnls::cli {
namespace {

ExperimentSpec parse_spec(const std::string& scenario, const ConfigDoc& doc,
                          std::optional<std::uint64_t> seed_override) {
  Params top(doc, "");
  ExperimentSpec spec;
  if (!is_scenario(scenario)) {
    std::string names;
    for (const auto& n : scenario_names()) names += (names.empty() ? "" : ", ") + n;
    throw SchemaError(doc.file(), 0, "unknown scenario '" + scenario + "' (one of " + names + ")");
  }
  spec.scenario = scenario;
  if (top.has("scenario") && top.text("scenario", std::nullopt) != scenario)
    top.fail("scenario", "configuration is for scenario '" + doc.root()["scenario"].get<std::string>() +
                             "', not '" + scenario + "'");
  spec.name = top.text("name", scenario);
  spec.seed = top.seed("seed", 1);
  if (seed_override) spec.seed = *seed_override;
  return spec;
}

}  // namespace

RunOutcome run_experiment(const std::string& scenario, const ConfigDoc& doc,
                          std::optional<std::uint64_t> seed_override,
                          const std::filesystem::path& out, bool write) {
  RunOutcome outcome;
  Action action;
  ExperimentSpec spec;
  nlohmann::ordered_json params;
  try {
    for (const auto& [k, v] : doc.root().items())
      if (k != "name" && k != "scenario" && k != "seed" && k != "parameters")
        doc.fail("/" + k, "unknown key '" + k + "'");
    spec = parse_spec(scenario, doc, seed_override);
    Params p(doc, "/parameters");
    action = plan_scenario(spec.scenario, p, spec.seed);
    params = p.effective();
  } catch (const SchemaError& e) {
    outcome.exit_code = kSchemaError;
    outcome.message = e.what();
    return outcome;
  }

  Recorder rec(spec.name, spec.scenario, spec.seed, params);
  try {
    action(rec);
  } catch (const Error& e) {
    // Solver blow-up and similar runtime failures count as failed assertions.
    rec.check(std::string("completed without error: ") + e.what(), false);
  }
  outcome.report = rec.json();
  outcome.exit_code = rec.passed() ? kPass : kAssertionFailed;
  for (const auto& f : rec.failures())
    outcome.message += (outcome.message.empty() ? "" : "\n") + ("FAILED " + f.describe());
  if (write) {
    outcome.run_dir = allocate_run_dir(out);
    rec.write(outcome.run_dir);
  }
  return outcome;
}

int run_cli(const std::string& scenario, const std::string& config_path,
            std::optional<std::uint64_t> seed_override, const std::filesystem::path& out,
            std::ostream& log, std::ostream& err) {
  ConfigDoc doc;
  try {
    doc = ConfigDoc::load(config_path);
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << '\n';
    return kSchemaError;
  }
  const auto start = std::chrono::steady_clock::now();
  RunOutcome r;
  try {
    r = run_experiment(scenario, doc, seed_override, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kAssertionFailed;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.exit_code == kSchemaError) {
    err << "error: " << r.message << '\n';
    return r.exit_code;
  }
  log << scenario << ": " << (r.exit_code == kPass ? "PASS" : "FAIL") << " in " << secs
      << " s, artifacts in " << r.run_dir.string() << '\n';
  for (const auto& [k, v] : r.report["metrics"].items()) log << "  " << k << " = " << v.dump() << '\n';
  if (!r.message.empty()) err << r.message << '\n';
  return r.exit_code;
}

}  // namespace dnls::cli
