#pragma once

// Run artifacts: report.json, report.csv, plotdata/*.tsv and field dumps,
// written into an append-only run directory <out>/runs/NNNN.

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dnls/cli/fielddump.hpp"
#include "dnls/estimates.hpp"

namespace dnls::cli {

nlohmann::ordered_json to_json(const ProbeReport& r);

struct Assertion {
  std::string metric;
  double value = 0.0;
  std::string relation;  // "<=", ">=", "is"
  double bound = 0.0;
  bool passed = true;

  std::string describe() const;
};

class Recorder {
 public:
  Recorder(std::string name, std::string scenario, std::uint64_t seed,
           nlohmann::ordered_json parameters);

  void metric(const std::string& key, double value);
  void note(std::string text);
  // Record the metric and assert value <= bound (resp. >=). NaN fails.
  bool check_le(const std::string& key, double value, double bound);
  bool check_ge(const std::string& key, double value, double bound);
  bool check(const std::string& key, bool ok);
  // Adds the report, asserts its verdict and emits its series as plot data.
  bool probe(const ProbeReport& r);
  void series(const std::string& name, const std::string& x_label, std::vector<double> x,
              const std::string& y_label, std::vector<double> y);
  void field(const std::string& file_name, FieldDump dump);

  bool passed() const;
  std::vector<Assertion> failures() const;
  const std::vector<std::pair<std::string, double>>& metrics() const { return metrics_; }
  const std::vector<ProbeReport>& probes() const { return probes_; }

  nlohmann::ordered_json json() const;
  std::string csv() const;
  // Writes every artifact below `dir` and returns the file names written.
  std::vector<std::string> write(const std::filesystem::path& dir) const;

 private:
  struct Series {
    std::string name, x_label, y_label;
    std::vector<double> x, y;
  };

  std::string name_, scenario_;
  std::uint64_t seed_;
  nlohmann::ordered_json parameters_;
  std::vector<std::pair<std::string, double>> metrics_;
  std::vector<Assertion> assertions_;
  std::vector<ProbeReport> probes_;
  std::vector<Series> series_;
  std::vector<std::pair<std::string, FieldDump>> fields_;
  std::vector<std::string> notes_;
};

// Creates and returns <out>/runs/NNNN with the next free index.
std::filesystem::path allocate_run_dir(const std::filesystem::path& out);

}  // namespace dnls::cli
