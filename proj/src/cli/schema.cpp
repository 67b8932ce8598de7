#include "dnls/cli/schema.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace dnls::cli {
namespace {

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

// Records the line of every member key and array element. The text is
// already known to be valid JSON, so the scan only tracks nesting.
class Locator {
 public:
  explicit Locator(const std::string& text) : s_(text) {}

  std::map<std::string, int> run() {
    skip_ws();
    lines_[""] = line_;
    value("");
    return lines_;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      if (s_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  std::string string_token() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < s_.size() && s_[pos_] != '"') {
      if (s_[pos_] == '\\') {
        ++pos_;
        out += s_[pos_] == 'n' ? '\n' : s_[pos_];
      } else {
        out += s_[pos_];
      }
      ++pos_;
    }
    ++pos_;  // closing quote
    return out;
  }

  void value(const std::string& ptr) {
    skip_ws();
    if (pos_ >= s_.size()) return;
    const char c = s_[pos_];
    if (c == '{') {
      ++pos_;
      for (;;) {
        skip_ws();
        if (s_[pos_] == '}') break;
        if (s_[pos_] == ',') {
          ++pos_;
          continue;
        }
        const int key_line = line_;
        const std::string child = ptr + "/" + escape_token(string_token());
        lines_[child] = key_line;
        skip_ws();
        ++pos_;  // colon
        value(child);
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      std::size_t index = 0;
      for (;;) {
        skip_ws();
        if (s_[pos_] == ']') break;
        if (s_[pos_] == ',') {
          ++pos_;
          continue;
        }
        const std::string child = ptr + "/" + std::to_string(index++);
        lines_[child] = line_;
        value(child);
      }
      ++pos_;
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != '}' && s_[pos_] != ']' &&
             !std::isspace(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
    }
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::map<std::string, int> lines_;
};

int line_at_byte(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

std::string describe(const nlohmann::json& v) {
  std::string s = v.dump();
  return s.size() > 40 ? s.substr(0, 37) + "..." : s;
}

}  // namespace

SchemaError::SchemaError(const std::string& file, int line, const std::string& msg)
    : Error(file + ":" + std::to_string(line) + ": " + msg), line_(line) {}

ConfigDoc ConfigDoc::parse(const std::string& text, const std::string& file) {
  ConfigDoc doc;
  doc.file_ = file;
  try {
    doc.root_ = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const int line = line_at_byte(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string msg = e.what();
    const auto colon = msg.rfind(": ");
    if (colon != std::string::npos) msg = msg.substr(colon + 2);
    throw SchemaError(file, line, "invalid JSON: " + msg);
  }
  doc.lines_ = Locator(text).run();
  if (!doc.root_.is_object()) throw SchemaError(file, 1, "top level must be a JSON object");
  return doc;
}

ConfigDoc ConfigDoc::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw SchemaError(path, 0, "cannot open configuration file");
  const std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return parse(text, path);
}

ConfigDoc ConfigDoc::from_json(const nlohmann::json& j) {
  ConfigDoc doc;
  doc.file_ = "<memory>";
  doc.root_ = j;
  if (!j.is_object()) throw SchemaError(doc.file_, 0, "top level must be a JSON object");
  return doc;
}

int ConfigDoc::line_of(const std::string& pointer) const {
  std::string p = pointer;
  for (;;) {
    const auto it = lines_.find(p);
    if (it != lines_.end()) return it->second;
    if (p.empty()) return 0;
    p = p.substr(0, p.rfind('/'));
  }
}

void ConfigDoc::fail(const std::string& pointer, const std::string& msg) const {
  throw SchemaError(file_, line_of(pointer), msg);
}

Params::Params(const ConfigDoc& doc, std::string pointer)
    : Params(doc, std::move(pointer),
             std::make_shared<nlohmann::ordered_json>(nlohmann::ordered_json::object()), "") {}

Params::Params(const ConfigDoc& doc, std::string pointer,
               std::shared_ptr<nlohmann::ordered_json> store, std::string store_at)
    : doc_(&doc), pointer_(std::move(pointer)), store_(std::move(store)),
      store_at_(std::move(store_at)) {
  const nlohmann::json::json_pointer jp(pointer_);
  if (doc.root().contains(jp)) {
    obj_ = &doc.root().at(jp);
    if (!obj_->is_object()) doc.fail(pointer_, "'" + pointer_ + "' must be an object");
  }
  (*store_)[nlohmann::ordered_json::json_pointer(store_at_)] = nlohmann::ordered_json::object();
}

std::string Params::pointer_of(const std::string& key) const {
  return pointer_ + "/" + escape_token(key);
}

const nlohmann::json* Params::lookup(const std::string& key) {
  seen_.insert(key);
  if (!obj_) return nullptr;
  const auto it = obj_->find(key);
  return it == obj_->end() ? nullptr : &*it;
}

void Params::store(const std::string& key, nlohmann::ordered_json v) {
  (*store_)[nlohmann::ordered_json::json_pointer(store_at_ + "/" + escape_token(key))] =
      std::move(v);
}

const nlohmann::ordered_json& Params::effective() const {
  return store_->at(nlohmann::ordered_json::json_pointer(store_at_));
}

void Params::fail(const std::string& key, const std::string& msg) const {
  const std::string ptr = pointer_of(key);
  const nlohmann::json::json_pointer jp(ptr);
  // Missing keys point at the enclosing object.
  doc_->fail(doc_->root().contains(jp) ? ptr : pointer_, msg);
}

bool Params::has(const std::string& key) const { return obj_ && obj_->contains(key); }

double Params::number(const std::string& key, std::optional<double> def,
                      std::optional<double> lo, std::optional<double> hi) {
  const auto* v = lookup(key);
  double x = 0.0;
  if (!v) {
    if (!def) fail(key, "missing required parameter '" + key + "'");
    x = *def;
  } else {
    if (!v->is_number()) fail(key, "'" + key + "' must be a number, got " + describe(*v));
    x = v->get<double>();
    if (!std::isfinite(x)) fail(key, "'" + key + "' must be finite");
    if (lo && x < *lo)
      fail(key, "'" + key + "' = " + describe(*v) + " is below the minimum " +
                    describe(nlohmann::json(*lo)));
    if (hi && x > *hi)
      fail(key, "'" + key + "' = " + describe(*v) + " is above the maximum " +
                    describe(nlohmann::json(*hi)));
  }
  store(key, x);
  return x;
}

double Params::positive(const std::string& key, std::optional<double> def) {
  const double x = number(key, def);
  if (!(x > 0.0)) fail(key, "'" + key + "' must be positive");
  return x;
}

long Params::integer(const std::string& key, std::optional<long> def, std::optional<long> lo,
                     std::optional<long> hi) {
  const auto* v = lookup(key);
  long x = 0;
  if (!v) {
    if (!def) fail(key, "missing required parameter '" + key + "'");
    x = *def;
  } else {
    if (!v->is_number_integer())
      fail(key, "'" + key + "' must be an integer, got " + describe(*v));
    x = v->get<long>();
    if (lo && x < *lo) fail(key, "'" + key + "' must be >= " + std::to_string(*lo));
    if (hi && x > *hi) fail(key, "'" + key + "' must be <= " + std::to_string(*hi));
  }
  store(key, x);
  return x;
}

std::size_t Params::count(const std::string& key, std::optional<std::size_t> def,
                          std::size_t lo) {
  std::optional<long> d;
  if (def) d = static_cast<long>(*def);
  return static_cast<std::size_t>(integer(key, d, static_cast<long>(lo)));
}

std::uint64_t Params::seed(const std::string& key, std::uint64_t def) {
  const auto* v = lookup(key);
  std::uint64_t x = def;
  if (v) {
    if (!v->is_number_integer() || (!v->is_number_unsigned() && v->get<long long>() < 0))
      fail(key, "'" + key + "' must be a non-negative integer, got " + describe(*v));
    x = v->get<std::uint64_t>();
  }
  store(key, x);
  return x;
}

bool Params::flag(const std::string& key, bool def) {
  const auto* v = lookup(key);
  bool x = def;
  if (v) {
    if (!v->is_boolean()) fail(key, "'" + key + "' must be true or false, got " + describe(*v));
    x = v->get<bool>();
  }
  store(key, x);
  return x;
}

std::string Params::choice(const std::string& key, std::optional<std::string> def,
                           std::initializer_list<const char*> allowed) {
  const auto* v = lookup(key);
  std::string x;
  std::string options;
  for (const char* a : allowed) options += std::string(options.empty() ? "" : ", ") + a;
  if (!v) {
    if (!def) fail(key, "missing required parameter '" + key + "' (one of " + options + ")");
    x = *def;
  } else {
    if (!v->is_string()) fail(key, "'" + key + "' must be a string, got " + describe(*v));
    x = v->get<std::string>();
    bool ok = false;
    for (const char* a : allowed) ok = ok || x == a;
    if (!ok) fail(key, "'" + key + "' = \"" + x + "\" is not one of " + options);
  }
  store(key, x);
  return x;
}

std::string Params::text(const std::string& key, std::optional<std::string> def) {
  const auto* v = lookup(key);
  std::string x;
  if (!v) {
    if (!def) fail(key, "missing required parameter '" + key + "'");
    x = *def;
  } else {
    if (!v->is_string()) fail(key, "'" + key + "' must be a string, got " + describe(*v));
    x = v->get<std::string>();
  }
  store(key, x);
  return x;
}

std::vector<double> Params::numbers(const std::string& key, std::vector<double> def) {
  const auto* v = lookup(key);
  std::vector<double> x = std::move(def);
  if (v) {
    if (!v->is_array() || v->empty())
      fail(key, "'" + key + "' must be a non-empty array of numbers");
    x.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      const auto& e = (*v)[i];
      if (!e.is_number() || !std::isfinite(e.get<double>()))
        doc_->fail(pointer_of(key) + "/" + std::to_string(i),
                   "'" + key + "[" + std::to_string(i) + "]' must be a finite number");
      x.push_back(e.get<double>());
    }
  }
  store(key, x);
  return x;
}

std::vector<std::size_t> Params::counts(const std::string& key, std::vector<std::size_t> def) {
  const auto* v = lookup(key);
  std::vector<std::size_t> x = std::move(def);
  if (v) {
    if (!v->is_array() || v->empty())
      fail(key, "'" + key + "' must be a non-empty array of positive integers");
    x.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      const auto& e = (*v)[i];
      if (!e.is_number_integer() || e.get<long long>() <= 0)
        doc_->fail(pointer_of(key) + "/" + std::to_string(i),
                   "'" + key + "[" + std::to_string(i) + "]' must be a positive integer");
      x.push_back(e.get<std::size_t>());
    }
  }
  store(key, x);
  return x;
}

Params Params::child(const std::string& key) {
  seen_.insert(key);
  return Params(*doc_, pointer_of(key), store_, store_at_ + "/" + escape_token(key));
}

void Params::finish() const {
  if (!obj_) return;
  for (const auto& [k, v] : obj_->items())
    if (!seen_.count(k)) fail(k, "unknown parameter '" + k + "'");
}

}  // namespace dnls::cli
