#ifndef FAIRDYN_CONFIG_HPP
#define FAIRDYN_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fairdyn/harness.hpp"

namespace fairdyn {

/// Parsed scenario file: the scenario itself plus run options.
struct RunConfig {
  Scenario scenario;
  std::optional<PopulationState> s0;
  long steps = 10000;
  long stride = 1;
  int resolution = 40;
  std::vector<InterventionSpec> compare_interventions;
};

/// Parses the `key = value` scenario format (numbers, strings, arrays,
/// nested inline tables, # comments) into a json document. Throws
/// ConfigError with a line number on malformed input.
nlohmann::json parse_scenario_text(const std::string& text);

/// Loads and validates a scenario file. Every Scenario invariant is checked
/// here, so an unknown tag or a malformed matrix fails at parse time.
RunConfig load_config(const std::string& path);

RunConfig config_from_json(const nlohmann::json& doc);

}  // namespace fairdyn

#endif
