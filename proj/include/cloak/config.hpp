#pragma once
// JSON experiment configuration.
//
//   {
//     "schema_version": 1,            required
//     "rho": 0.25, "delta": 0.05,     required
//     "n": 32,                        required, 0 = homogenized reference
//     "omega": 1.0,                   optional
//     "inner_shell_mode": "computed-pushforward" | "paper-literal",
//     "l_max": 20, "tol": 1e-10,
//     "object": [{"r_outer": 0.5, "eps": [re, im], "mu": [re, im]}],
//     "weights": "sobolev" | "uniform",
//     "medium": "cloak" | "vacuum"
//   }

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cloak/measure.hpp"

namespace cloak {

inline constexpr int kSchemaVersion = 1;

/// Every problem found in a configuration document, one entry per field.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

ExperimentConfig parse_config(const std::string& text);

nlohmann::ordered_json config_to_json(const ExperimentConfig& config);

}  // namespace cloak
