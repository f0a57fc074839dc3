#include <map>

#include "support.hpp"

namespace experiments {

namespace {

struct Entry {
  Summary (*run)(const Params&, const RunContext&);
  const char* description;
};

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> presets{
      {"toy3", {preset_toy3, "three-state chain: stationary vector, one-step pseudo-mixing, point-mass metastability"}},
      {"coord2", {preset_coord2, "two-player coordination game: matrix, stationary vector, one-step distances"}},
      {"or-uniform-meta", {preset_or_uniform_meta, "OR game: one-step drift of the uniform distribution and its amplification"}},
      {"or-pseudo-mix", {preset_or_pseudo_mix, "OR game: distance to uniform over the guaranteed window from weight-k starts"}},
      {"ising-pi-meta", {preset_ising_pi_meta, "Ising game: one-step drift of the all-plus / all-minus point masses"}},
      {"ising-convergence", {preset_ising_convergence, "Ising game: convergence to all-plus via the hitting-time bound"}},
      {"ring-bottlenecks", {preset_ring_bottlenecks, "ring game: singleton bottleneck ratios and the bottleneck identity"}},
      {"ring-pseudo", {preset_ring_pseudo, "ring game with a risk-dominant strategy: pseudo-mixing from S*_d"}},
      {"ring-nodom", {preset_ring_nodom, "ring game without a risk-dominant strategy: level potential, mu_d drift, absorption"}},
      {"bd-suite", {preset_bd_suite, "birth-and-death chains: ruin closed form, geometric bound, laziness, exit times"}},
  };
  return presets;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, entry] : registry()) names.push_back(name);
  return names;
}

std::string preset_description(const std::string& name) {
  const auto it = registry().find(name);
  return it == registry().end() ? std::string() : it->second.description;
}

Summary run_preset(const std::string& name, const nlohmann::json& overrides, const RunContext& ctx) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw ConfigError("preset: unknown preset '" + name + "'");
  const Params params(overrides, name);
  Summary s = it->second.run(params, ctx);
  s.parameters()["seed"] = ctx.seed;
  return s;
}

}  // namespace experiments
