#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "experiments/summary.hpp"

namespace experiments {

struct RunContext {
  std::filesystem::path out_dir;  // empty: write no files
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

std::vector<std::string> preset_names();
std::string preset_description(const std::string& name);

// Runs a named preset with parameter overrides. Throws ConfigError for an
// unknown preset or invalid overrides.
Summary run_preset(const std::string& name, const nlohmann::json& overrides, const RunContext& ctx);

// {"op": "...", ...}: dispatches to a single library operation. See the
// README for the list of operations and their parameters.
Summary run_generic(const nlohmann::json& config, const RunContext& ctx);

std::vector<std::string> generic_operations();

}  // namespace experiments
