#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace qpde::scenario {

struct Assertion {
  std::string name;
  bool pass = false;
  std::string details;
};

struct ScenarioResult {
  std::string name;
  std::string kind;
  std::vector<Assertion> assertions;
  std::vector<std::string> anomalies;  // recorded observations, never fatal

  bool all_pass() const {
    for (const auto& a : assertions)
      if (!a.pass) return false;
    return true;
  }
};

struct CatalogEntry {
  std::string kind;
  std::string description;
  std::string anchor;  // the structural claim the scenario exercises
};

// The ten bundled scenario kinds.
const std::vector<CatalogEntry>& catalog();

// Fully materialized default configuration for a scenario kind.
nlohmann::ordered_json default_config(const std::string& kind);

// Every bundled scenario instance (the ten kinds plus the parameter variants
// exercised by the acceptance suite), as (name, config) pairs.
std::vector<std::pair<std::string, nlohmann::ordered_json>> bundled_configs();

// Run one scenario. The configuration is validated, defaults are materialized,
// and when output_dir is nonempty every artifact (config echo, summary, CSV
// tables, plots) is written there. Throws ConfigError for bad configurations
// and NumericalError family for blow-up/resolution failures.
ScenarioResult run_scenario(const nlohmann::ordered_json& config, const std::string& output_dir);

// Summary text exactly as written to summary.txt.
std::string summary_text(const ScenarioResult& result);

}  // namespace qpde::scenario
