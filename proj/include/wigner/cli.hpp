#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wigner/current.hpp"
#include "wigner/io.hpp"

namespace wigner {

struct RunConfig {
  BilliardShape shape;
  std::optional<StateExpansion> state;
  std::optional<PhaseSpaceGrid> grid;
  std::vector<double> times{0.0};
  std::filesystem::path out_dir{"out"};
  std::vector<std::string> checks;
  int resolution = 256;
  std::map<std::string, double> tolerances;
  nlohmann::json raw;
};

nlohmann::json load_config_file(const std::filesystem::path& path);

// Apply one "dotted.key=value" override; the value is parsed as JSON when
// possible and kept as a string otherwise.
void apply_override(nlohmann::json& config, const std::string& key_equals_value);

RunConfig parse_config(const nlohmann::json& j);

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

std::vector<CheckResult> run_checks(const RunConfig& cfg);

int cmd_wigner(const RunConfig& cfg);
int cmd_current(const RunConfig& cfg);
int cmd_check(const RunConfig& cfg);
int cmd_project(const RunConfig& cfg);

std::string version_string();

}  // namespace wigner
