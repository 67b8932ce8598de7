#pragma once

// Experiment configuration files: JSON with a per-scenario parameter schema.
// Every violation is reported with the line of the offending key, or of the
// enclosing object when a key is missing.

#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "dnls/error.hpp"

namespace dnls::cli {

class SchemaError : public Error {
 public:
  SchemaError(const std::string& file, int line, const std::string& msg);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// Parsed JSON plus the source line of every value, keyed by JSON pointer.
class ConfigDoc {
 public:
  static ConfigDoc parse(const std::string& text, const std::string& file);
  static ConfigDoc load(const std::string& path);
  // In-memory document without a source file; lines are reported as 0.
  static ConfigDoc from_json(const nlohmann::json& j);

  const nlohmann::json& root() const { return root_; }
  const std::string& file() const { return file_; }
  // Line of the value at `pointer`, falling back to the nearest ancestor.
  int line_of(const std::string& pointer) const;
  [[noreturn]] void fail(const std::string& pointer, const std::string& msg) const;

 private:
  nlohmann::json root_;
  std::string file_;
  std::map<std::string, int> lines_;
};

// Typed, validated access to one JSON object of the document. Read every key
// first, then call finish() to reject unknown keys.
class Params {
 public:
  Params(const ConfigDoc& doc, std::string pointer);

  double number(const std::string& key, std::optional<double> def,
                std::optional<double> lo = std::nullopt,
                std::optional<double> hi = std::nullopt);
  // Strictly positive.
  double positive(const std::string& key, std::optional<double> def);
  long integer(const std::string& key, std::optional<long> def, std::optional<long> lo = std::nullopt,
               std::optional<long> hi = std::nullopt);
  std::size_t count(const std::string& key, std::optional<std::size_t> def,
                    std::size_t lo = 1);
  std::uint64_t seed(const std::string& key, std::uint64_t def);
  bool flag(const std::string& key, bool def);
  std::string choice(const std::string& key, std::optional<std::string> def,
                     std::initializer_list<const char*> allowed);
  std::string text(const std::string& key, std::optional<std::string> def);
  std::vector<double> numbers(const std::string& key, std::vector<double> def);
  std::vector<std::size_t> counts(const std::string& key, std::vector<std::size_t> def);
  bool has(const std::string& key) const;
  Params child(const std::string& key);

  // Rejects keys that were never read.
  void finish() const;
  [[noreturn]] void fail(const std::string& key, const std::string& msg) const;

  // The parameters as read, defaults filled in.
  // Children share the store of their parent.
  const nlohmann::ordered_json& effective() const;

 private:
  Params(const ConfigDoc& doc, std::string pointer,
         std::shared_ptr<nlohmann::ordered_json> store, std::string store_at);
  const nlohmann::json* lookup(const std::string& key);
  std::string pointer_of(const std::string& key) const;
  void store(const std::string& key, nlohmann::ordered_json v);

  const ConfigDoc* doc_;
  std::string pointer_;
  const nlohmann::json* obj_ = nullptr;
  std::set<std::string> seen_;
  std::shared_ptr<nlohmann::ordered_json> store_;
  std::string store_at_;
};

}  // namespace dnls::cli
