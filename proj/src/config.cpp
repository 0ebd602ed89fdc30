#include "cloak/config.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "cloak/errors.hpp"

namespace cloak {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& items) {
  std::string out = "invalid configuration:";
  for (const auto& item : items) out += "\n  - " + item;
  return out;
}

class Reader {
 public:
  explicit Reader(const json& doc) : doc_(doc) {}

  std::vector<std::string>& problems() { return problems_; }

  bool number(const char* key, double* out, bool required) {
    if (!doc_.contains(key)) {
      if (required) problems_.push_back(std::string(key) + ": missing required field");
      return false;
    }
    const auto& v = doc_.at(key);
    if (!v.is_number()) {
      problems_.push_back(std::string(key) + ": expected a number");
      return false;
    }
    *out = v.get<double>();
    return true;
  }

  bool integer(const char* key, int* out, bool required) {
    if (!doc_.contains(key)) {
      if (required) problems_.push_back(std::string(key) + ": missing required field");
      return false;
    }
    const auto& v = doc_.at(key);
    if (!v.is_number_integer()) {
      problems_.push_back(std::string(key) + ": expected an integer");
      return false;
    }
    *out = v.get<int>();
    return true;
  }

  bool text(const char* key, std::string* out) {
    if (!doc_.contains(key)) return false;
    const auto& v = doc_.at(key);
    if (!v.is_string()) {
      problems_.push_back(std::string(key) + ": expected a string");
      return false;
    }
    *out = v.get<std::string>();
    return true;
  }

 private:
  const json& doc_;
  std::vector<std::string> problems_;
};

bool complex_pair(const json& v, cplx* out) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    return false;
  *out = {v[0].get<double>(), v[1].get<double>()};
  return true;
}

void read_object(const json& doc, ExperimentConfig& config,
                 std::vector<std::string>& problems) {
  if (!doc.contains("object")) return;
  const auto& list = doc.at("object");
  if (!list.is_array() || list.empty()) {
    problems.push_back("object: expected a non-empty array of shells");
    return;
  }
  HiddenObject object;
  double previous = 0.0;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& item = list[i];
    const std::string where = "object[" + std::to_string(i) + "]";
    if (!item.is_object()) {
      problems.push_back(where + ": expected an object");
      continue;
    }
    ObjectShell shell{0.0, 1.0, 1.0};
    if (!item.contains("r_outer") || !item.at("r_outer").is_number()) {
      problems.push_back(where + ".r_outer: expected a number");
    } else {
      shell.r_outer = item.at("r_outer").get<double>();
      if (shell.r_outer > kObjectRadius)
        problems.push_back(where + ".r_outer: " + std::to_string(shell.r_outer) +
                           " > 0.5; hidden objects must lie inside B_{1/2}");
      else if (!(shell.r_outer > previous))
        problems.push_back(where + ".r_outer: radii must increase strictly from 0");
      previous = shell.r_outer;
    }
    if (!item.contains("eps") || !complex_pair(item.at("eps"), &shell.eps)) {
      problems.push_back(where + ".eps: expected [re, im]");
    } else if (!(shell.eps.real() > 0.0) || shell.eps.imag() < 0.0) {
      problems.push_back(where + ".eps: need Re eps > 0 and Im eps >= 0");
    }
    if (!item.contains("mu") || !complex_pair(item.at("mu"), &shell.mu)) {
      problems.push_back(where + ".mu: expected [re, im]");
    } else if (!(shell.mu.real() > 0.0) || shell.mu.imag() != 0.0) {
      problems.push_back(where + ".mu: need Re mu > 0 and Im mu = 0");
    }
    object.shells.push_back(shell);
  }
  if (!object.shells.empty() && object.shells.back().r_outer != kObjectRadius)
    problems.push_back("object: the outermost shell must end at r_outer = 0.5");
  config.object = std::move(object);
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

ExperimentConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("document: malformed JSON (") + e.what() + ")"});
  }
  if (!doc.is_object()) throw ConfigError({"document: expected a JSON object"});

  static const std::set<std::string> known{
      "schema_version", "omega", "rho",    "delta",   "n",     "inner_shell_mode",
      "l_max",          "tol",   "object", "weights", "medium"};

  ExperimentConfig config;
  Reader read(doc);
  auto& problems = read.problems();
  for (const auto& [key, value] : doc.items())
    if (!known.count(key)) problems.push_back(key + ": unknown field");

  int version = 0;
  if (read.integer("schema_version", &version, true) && version != kSchemaVersion)
    problems.push_back("schema_version: expected " + std::to_string(kSchemaVersion) +
                       ", got " + std::to_string(version));

  if (read.number("omega", &config.omega, false) && !(config.omega > 0.0))
    problems.push_back("omega: must be positive");
  if (read.number("rho", &config.rho, true) && !(config.rho > 0.0 && config.rho <= 0.5))
    problems.push_back("rho: " + std::to_string(config.rho) +
                       " outside (0, 1/2]; the two-phase laminate is feasible only "
                       "for 0 < rho <= 1/2");
  if (read.number("delta", &config.delta, true) &&
      !(config.delta >= 0.0 && config.delta <= 0.5))
    problems.push_back("delta: must lie in [0, 0.5]");
  if (read.integer("n", &config.n, true) && config.n < 0)
    problems.push_back("n: must be non-negative");
  if (read.integer("l_max", &config.l_max, false) &&
      (config.l_max < 1 || config.l_max > 64))
    problems.push_back("l_max: must lie in [1, 64]");
  if (read.number("tol", &config.tol, false) && !(config.tol > 0.0 && config.tol < 1.0))
    problems.push_back("tol: must lie in (0, 1)");

  std::string name;
  if (read.text("inner_shell_mode", &name)) {
    try {
      config.inner_shell_mode = inner_shell_mode_from_string(name);
    } catch (const DomainError&) {
      problems.push_back("inner_shell_mode: expected \"computed-pushforward\" or "
                         "\"paper-literal\"");
    }
  }
  if (read.text("weights", &name)) {
    try {
      config.weights = weight_scheme_from_string(name);
    } catch (const DomainError&) {
      problems.push_back("weights: expected \"sobolev\" or \"uniform\"");
    }
  }
  if (read.text("medium", &name)) {
    if (name == "cloak")
      config.medium = MediumKind::Cloak;
    else if (name == "vacuum")
      config.medium = MediumKind::Vacuum;
    else
      problems.push_back("medium: expected \"cloak\" or \"vacuum\"");
  }
  read_object(doc, config, problems);

  if (!problems.empty()) throw ConfigError(problems);
  return config;
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["omega"] = c.omega;
  doc["rho"] = c.rho;
  doc["delta"] = c.delta;
  doc["n"] = c.n;
  doc["inner_shell_mode"] = to_string(c.inner_shell_mode);
  doc["l_max"] = c.l_max;
  doc["tol"] = c.tol;
  auto shells = nlohmann::ordered_json::array();
  for (const auto& s : c.object.shells)
    shells.push_back({{"r_outer", s.r_outer},
                      {"eps", {s.eps.real(), s.eps.imag()}},
                      {"mu", {s.mu.real(), s.mu.imag()}}});
  doc["object"] = std::move(shells);
  doc["weights"] = to_string(c.weights);
  doc["medium"] = c.medium == MediumKind::Cloak ? "cloak" : "vacuum";
  return doc;
}

}  // namespace cloak
