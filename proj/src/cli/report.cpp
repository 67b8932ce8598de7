#include "dnls/cli/report.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "dnls/error.hpp"

namespace dnls::cli {
namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Non-finite values become strings; JSON has no literal for them.
nlohmann::ordered_json num(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

nlohmann::ordered_json nums(const std::vector<double>& v) {
  auto a = nlohmann::ordered_json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  os << text;
  if (!os) throw FormatError("cannot write " + p.string());
}

std::string safe_name(std::string s) {
  for (char& c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.'))
      c = '_';
  return s;
}

}  // namespace

nlohmann::ordered_json to_json(const ProbeReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["samples"] = r.samples;
  j["sup_ratio"] = num(r.sup_ratio);
  j["stable"] = r.stable;
  j["passed"] = r.passed;
  auto& params = j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = num(v);
  auto& metrics = j["metrics"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = num(v);
  auto& series = j["series"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.series) series[k] = nums(v);
  j["notes"] = r.notes;
  return j;
}

std::string Assertion::describe() const {
  if (relation == "is") return metric + (passed ? " holds" : " does not hold");
  return metric + " = " + number(value) + " (required " + relation + " " + number(bound) + ")";
}

Recorder::Recorder(std::string name, std::string scenario, std::uint64_t seed,
                   nlohmann::ordered_json parameters)
    : name_(std::move(name)), scenario_(std::move(scenario)), seed_(seed),
      parameters_(std::move(parameters)) {}

void Recorder::metric(const std::string& key, double value) {
  for (auto& [k, v] : metrics_)
    if (k == key) {
      v = value;
      return;
    }
  metrics_.emplace_back(key, value);
}

void Recorder::note(std::string text) { notes_.push_back(std::move(text)); }

bool Recorder::check_le(const std::string& key, double value, double bound) {
  metric(key, value);
  const bool ok = value <= bound;
  assertions_.push_back({key, value, "<=", bound, ok});
  return ok;
}

bool Recorder::check_ge(const std::string& key, double value, double bound) {
  metric(key, value);
  const bool ok = value >= bound;
  assertions_.push_back({key, value, ">=", bound, ok});
  return ok;
}

bool Recorder::check(const std::string& key, bool ok) {
  assertions_.push_back({key, ok ? 1.0 : 0.0, "is", 1.0, ok});
  return ok;
}

bool Recorder::probe(const ProbeReport& r) {
  probes_.push_back(r);
  const std::vector<double>* x = nullptr;
  std::string x_label = "index";
  if (!r.series.empty() && (r.series.front().first == "T" || r.series.front().first == "n_points" ||
                            r.series.front().first == "epsilon")) {
    x = &r.series.front().second;
    x_label = r.series.front().first;
  }
  for (const auto& [k, v] : r.series) {
    if (x && &v == x) continue;
    std::vector<double> xs;
    if (x && x->size() == v.size()) {
      xs = *x;
    } else {
      for (std::size_t i = 0; i < v.size(); ++i) xs.push_back(static_cast<double>(i));
    }
    series(r.name + "_" + k, x && x->size() == v.size() ? x_label : "index", xs, k, v);
  }
  return check(r.name + ".passed", r.passed);
}

void Recorder::series(const std::string& name, const std::string& x_label, std::vector<double> x,
                      const std::string& y_label, std::vector<double> y) {
  if (x.size() != y.size()) throw ParameterError("series " + name + " has mismatched columns");
  series_.push_back({name, x_label, y_label, std::move(x), std::move(y)});
}

void Recorder::field(const std::string& file_name, FieldDump dump) {
  fields_.emplace_back(file_name, std::move(dump));
}

bool Recorder::passed() const {
  for (const auto& a : assertions_)
    if (!a.passed) return false;
  return true;
}

std::vector<Assertion> Recorder::failures() const {
  std::vector<Assertion> out;
  for (const auto& a : assertions_)
    if (!a.passed) out.push_back(a);
  return out;
}

nlohmann::ordered_json Recorder::json() const {
  nlohmann::ordered_json j;
  j["name"] = name_;
  j["scenario"] = scenario_;
  j["seed"] = seed_;
  j["passed"] = passed();
  j["parameters"] = parameters_;
  auto& m = j["metrics"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : metrics_) m[k] = num(v);
  auto& a = j["assertions"] = nlohmann::ordered_json::array();
  for (const auto& x : assertions_) {
    nlohmann::ordered_json e;
    e["metric"] = x.metric;
    e["relation"] = x.relation;
    if (x.relation != "is") {
      e["value"] = num(x.value);
      e["bound"] = num(x.bound);
    }
    e["passed"] = x.passed;
    a.push_back(e);
  }
  auto& p = j["probes"] = nlohmann::ordered_json::array();
  for (const auto& r : probes_) p.push_back(to_json(r));
  auto& f = j["fields"] = nlohmann::ordered_json::array();
  for (const auto& [name, d] : fields_) f.push_back(name);
  auto& s = j["plotdata"] = nlohmann::ordered_json::array();
  for (const auto& x : series_) s.push_back("plotdata/" + safe_name(x.name) + ".tsv");
  j["notes"] = notes_;
  return j;
}

std::string Recorder::csv() const {
  std::ostringstream os;
  os << "metric,value\n";
  for (const auto& [k, v] : metrics_) os << k << ',' << number(v) << '\n';
  for (const auto& r : probes_) {
    os << r.name << ".samples," << r.samples << '\n';
    os << r.name << ".sup_ratio," << number(r.sup_ratio) << '\n';
    os << r.name << ".stable," << (r.stable ? 1 : 0) << '\n';
    for (const auto& [k, v] : r.metrics) os << r.name << '.' << k << ',' << number(v) << '\n';
  }
  os << "passed," << (passed() ? 1 : 0) << '\n';
  return os.str();
}

std::vector<std::string> Recorder::write(const std::filesystem::path& dir) const {
  std::vector<std::string> written;
  std::filesystem::create_directories(dir);
  write_text(dir / "report.json", json().dump(2) + "\n");
  written.push_back("report.json");
  write_text(dir / "report.csv", csv());
  written.push_back("report.csv");
  if (!series_.empty()) std::filesystem::create_directories(dir / "plotdata");
  for (const auto& s : series_) {
    std::ostringstream os;
    os << "# " << s.x_label << '\t' << s.y_label << '\n';
    for (std::size_t i = 0; i < s.x.size(); ++i) os << number(s.x[i]) << '\t' << number(s.y[i]) << '\n';
    const std::string rel = "plotdata/" + safe_name(s.name) + ".tsv";
    write_text(dir / rel, os.str());
    written.push_back(rel);
  }
  for (const auto& [name, d] : fields_) {
    write_field_dump(dir / name, d);
    written.push_back(name);
  }
  return written;
}

std::filesystem::path allocate_run_dir(const std::filesystem::path& out) {
  const auto runs = out / "runs";
  std::filesystem::create_directories(runs);
  for (int i = 0; i < 10000; ++i) {
    std::ostringstream name;
    name << std::setw(4) << std::setfill('0') << i;
    const auto dir = runs / name.str();
    // create_directory returns false when the entry already exists.
    if (std::filesystem::create_directory(dir)) return dir;
  }
  throw FormatError("no free run directory below " + runs.string());
}

}  // namespace dnls::cli
