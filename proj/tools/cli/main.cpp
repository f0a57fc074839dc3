#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "experiments/params.hpp"
#include "experiments/presets.hpp"
#include "logitmeta/csv.hpp"
#include "logitmeta/error.hpp"

namespace {

constexpr int kExitFailedAssertion = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

struct CommonOptions {
  std::string out;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool json = false;
  bool no_files = false;
  std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--out", o.out, "Output directory (default: $LOGITMETA_OUT, else ./logitmeta-out)");
  cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  cmd->add_option("--threads", o.threads, "Worker threads (0: hardware concurrency)")->capture_default_str();
  cmd->add_flag("--json", o.json, "Print the summary as JSON");
  cmd->add_flag("--no-files", o.no_files, "Do not write CSV or JSON files");
  cmd->add_option("--set", o.sets, "Parameter override key=value; value is parsed as JSON when possible");
}

// key=value, value read as JSON and kept as a string when it does not parse.
nlohmann::json parse_sets(const std::vector<std::string>& sets) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw experiments::ConfigError("--set " + s + ": expected key=value");
    const std::string key = s.substr(0, eq);
    const std::string value = s.substr(eq + 1);
    auto parsed = nlohmann::json::parse(value, nullptr, false);
    j[key] = parsed.is_discarded() ? nlohmann::json(value) : parsed;
  }
  return j;
}

experiments::RunContext context_of(const CommonOptions& o) {
  experiments::RunContext ctx;
  ctx.seed = o.seed;
  ctx.threads = o.threads;
  if (!o.no_files) {
    if (!o.out.empty()) {
      ctx.out_dir = o.out;
    } else if (const char* env = std::getenv("LOGITMETA_OUT"); env && *env) {
      ctx.out_dir = env;
    } else {
      ctx.out_dir = "logitmeta-out";
    }
  }
  return ctx;
}

int finish(experiments::Summary& summary, const CommonOptions& o, const experiments::RunContext& ctx) {
  const auto j = summary.to_json();
  if (!ctx.out_dir.empty()) {
    logitmeta::save_to_file(ctx.out_dir / summary.name() / "summary.json", j.dump(2) + "\n");
  }
  if (o.json) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << summary.report();
  }
  return summary.passed() ? 0 : kExitFailedAssertion;
}

nlohmann::json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw experiments::ConfigError(path + ": cannot open config file");
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw experiments::ConfigError(path + ": not valid JSON");
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Logit dynamics: metastability, pseudo-mixing and birth-and-death tools"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("logitmeta 0.1.0"));

  CommonOptions preset_opts;
  std::string preset_name;
  bool list = false;
  auto* preset = app.add_subcommand("preset", "Run a named experiment preset");
  preset->add_option("name", preset_name, "Preset name");
  preset->add_flag("--list", list, "List presets and exit");
  add_common(preset, preset_opts);

  // Generic subcommands: each accepts the operations under its namespace.
  const std::map<std::string, std::string> groups{
      {"exact", "Exact operations on the dense or matrix-free chain"},
      {"simulate", "Monte Carlo hitting times and trajectories"},
      {"bd", "Birth-and-death chains (ops bd.*)"},
      {"meta", "Metastability certificates and pseudo-mixing (ops meta.*)"},
  };
  std::map<std::string, CommonOptions> generic_opts;
  std::map<std::string, std::string> config_path, op_name, game_family;
  std::map<std::string, int> players;
  std::map<std::string, double> beta;
  std::map<std::string, CLI::App*> generic_cmds;
  for (const auto& [name, help] : groups) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("--config", config_path[name], "JSON config file");
    cmd->add_option("--op", op_name[name], "Operation");
    cmd->add_option("--game", game_family[name], "Game family: or, ising, ring");
    cmd->add_option("--n", players[name], "Number of players or chain size");
    cmd->add_option("--beta", beta[name], "Inverse temperature");
    add_common(cmd, generic_opts[name]);
    generic_cmds[name] = cmd;
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (preset->parsed()) {
      if (list || preset_name.empty()) {
        for (const auto& n : experiments::preset_names()) {
          std::cout << n << "  " << experiments::preset_description(n) << '\n';
        }
        return list ? 0 : kExitConfigError;
      }
      const auto ctx = context_of(preset_opts);
      auto summary = experiments::run_preset(preset_name, parse_sets(preset_opts.sets), ctx);
      return finish(summary, preset_opts, ctx);
    }
    for (const auto& [name, cmd] : generic_cmds) {
      if (!cmd->parsed()) continue;
      const auto& o = generic_opts[name];
      nlohmann::json config = config_path[name].empty() ? nlohmann::json::object() : load_config(config_path[name]);
      if (!config.is_object()) throw experiments::ConfigError("config: expected an object");
      const auto overrides = parse_sets(o.sets);
      for (const auto& [k, v] : overrides.items()) config[k] = v;
      if (cmd->count("--op")) config["op"] = op_name[name];
      if (cmd->count("--game")) config["game"] = game_family[name];
      if (cmd->count("--n")) config["n"] = players[name];
      if (cmd->count("--beta")) config["beta"] = beta[name];
      if (!config.contains("op")) {
        if (name != "simulate") throw experiments::ConfigError("config.op: required string is missing");
        config["op"] = "simulate";
      }
      if (!config["op"].is_string()) throw experiments::ConfigError("config.op: expected a string");
      std::string op = config["op"].get<std::string>();
      if ((name == "bd" || name == "meta") && op.rfind(name + ".", 0) != 0) op = name + "." + op;
      const bool in_group = name == "bd" || name == "meta"
                                ? op.rfind(name + ".", 0) == 0
                                : name == "simulate" ? op == "simulate"
                                                     : op.find('.') == std::string::npos && op != "simulate";
      if (!in_group) throw experiments::ConfigError("config.op: '" + op + "' is not a '" + name + "' operation");
      config["op"] = op;
      const auto ctx = context_of(o);
      auto summary = experiments::run_generic(config, ctx);
      return finish(summary, o, ctx);
    }
  } catch (const experiments::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
  return 0;
}
