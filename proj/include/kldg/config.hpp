#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kldg/kinetic_bounds.hpp"
#include "kldg/limiter.hpp"

#include <json.hpp>

namespace kldg {

struct OutputConfig {
  std::string dir = "out";
  std::string prefix;             // defaults to the case name
  std::vector<double> times;      // extra output instants; final always written
  bool csv = true;
  bool binary = false;

  bool operator==(const OutputConfig&) const = default;
};

/// Full declarative description of a run. Parsed strictly: unknown keys are
/// rejected so that misspelled settings cannot silently alter a study.
struct RunConfig {
  std::string case_name;
  int p = 2;
  std::array<int, 2> elements{0, 1};
  std::optional<double> gamma;
  std::optional<double> t_end;
  std::optional<std::string> riemann;
  double cfl = 0.5;
  std::optional<double> dt_fixed;
  KineticConfig kinetic;
  bool strict_bounds = false;
  LimiterConfig limiter;
  OutputConfig output;
  std::uint64_t seed = 0;
  bool check_admissibility = false;

  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json config_to_json(const RunConfig& c);

/// Apply a `key=value` override with dotted paths (e.g. kinetic.n_per_axis=512).
void apply_override(nlohmann::json& j, const std::string& kv);

}  // namespace kldg
