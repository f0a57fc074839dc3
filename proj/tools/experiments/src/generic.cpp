#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "experiments/presets.hpp"
#include "logitmeta/bd_analysis.hpp"
#include "logitmeta/birth_death.hpp"
#include "logitmeta/chain.hpp"
#include "logitmeta/csv.hpp"
#include "logitmeta/logit_kernel.hpp"
#include "logitmeta/metastability.hpp"
#include "logitmeta/simulation.hpp"
#include "logitmeta/subsets.hpp"
#include "support.hpp"

namespace experiments {

using logitmeta::Distribution;
using logitmeta::GameSpec;
using logitmeta::LogitKernel;
using logitmeta::StateSet;

namespace {

const std::set<std::string> kGameKeys{"op", "game", "family", "n", "beta", "a", "b", "c", "d"};

std::set<std::string> with_game_keys(std::set<std::string> extra) {
  extra.insert(kGameKeys.begin(), kGameKeys.end());
  return extra;
}

GameSpec game_of(const Params& p) {
  if (p.has("game") && p.raw()["game"].is_object()) return p.child("game").game("or", 4, 1.0);
  nlohmann::json j = p.raw();
  if (p.has("game")) {
    if (p.has("family")) p.fail("game", "give either game or family, not both");
    j["family"] = p.text("game");
  }
  j.erase("game");
  return Params(j, p.path()).game("or", 4, 1.0);
}

void save(Summary& s, const RunContext& ctx, const std::string& file, const std::string& text) {
  if (ctx.out_dir.empty()) return;
  const auto path = ctx.out_dir / s.name() / file;
  logitmeta::save_to_file(path, text);
  s.add_file(path);
}

template <class Writer>
std::string render(const Writer& write) {
  std::ostringstream out;
  write(out);
  return out.str();
}

StateSet subset_of(const Params& p, const logitmeta::StateSpace& space, const std::string& key) {
  const std::string spec = p.text(key);
  try {
    return logitmeta::named_subset(space, spec);
  } catch (const logitmeta::InvalidArgument& e) {
    p.fail(key, e.what());
  }
}

// Integer index, or "all-zeros" / "all-ones".
std::uint64_t state_of(const Params& p, const GameSpec& game, const std::string& key, std::uint64_t fallback) {
  if (!p.has(key)) return fallback;
  const int n = game.players();
  const std::uint64_t ones = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  if (p.raw()[key].is_string()) {
    const auto name = p.text(key);
    if (name == "all-zeros") return 0;
    if (name == "all-ones") return ones;
    p.fail(key, "expected a state index, \"all-zeros\" or \"all-ones\"");
  }
  const auto v = p.count(key, 0);
  if (v > ones) p.fail(key, "state index out of range");
  return v;
}

// "uniform", "gibbs", "state:<i>", "restricted:<subset>" (Gibbs conditioned on
// the subset) or "file:<path>" (distribution CSV).
Distribution distribution_of(const Params& p, const GameSpec& game, const LogitKernel& kernel, const std::string& key,
                             const std::string& fallback) {
  const std::string spec = p.text(key, fallback);
  const std::size_t size = kernel.size();
  try {
    if (spec == "uniform") return Distribution::uniform(size);
    if (spec == "gibbs") return logitmeta::gibbs_distribution(game);
    if (spec.rfind("state:", 0) == 0) return Distribution::point_mass(size, std::stoull(spec.substr(6)));
    if (spec.rfind("restricted:", 0) == 0) {
      return logitmeta::restricted_distribution(logitmeta::gibbs_distribution(game),
                                                logitmeta::named_subset(kernel.space(), spec.substr(11)));
    }
    if (spec.rfind("file:", 0) == 0) {
      std::istringstream in(logitmeta::load_file(spec.substr(5)));
      auto mu = logitmeta::read_distribution(in);
      if (mu.size() != size) p.fail(key, "distribution size does not match the game");
      return mu;
    }
  } catch (const std::logic_error& e) {
    p.fail(key, std::string("malformed distribution: ") + e.what());
  } catch (const logitmeta::InvalidArgument& e) {
    p.fail(key, e.what());
  }
  p.fail(key, "expected uniform, gibbs, state:<i>, restricted:<subset> or file:<path>");
}

// {"preset": "ehrenfest"|"lazy-ehrenfest"|"magnetization"|"or-projection"|"file", "n", "beta", "path"}
logitmeta::BirthDeathChain chain_of(const Params& p) {
  const std::string preset = p.text("preset", "ehrenfest");
  const auto n = p.integer("n", 10);
  if (preset != "file" && (n < 1 || n > 1000000)) p.fail("n", "must lie in [1, 1000000]");
  const double beta = p.number("beta", 1.0);
  if (beta < 0.0) p.fail("beta", "must be nonnegative");
  if (preset == "ehrenfest") return logitmeta::ehrenfest(static_cast<int>(n));
  if (preset == "lazy-ehrenfest") return logitmeta::lazy(logitmeta::ehrenfest(static_cast<int>(n)));
  if (preset == "magnetization") return logitmeta::magnetization_chain(static_cast<int>(n), beta);
  if (preset == "or-projection") return logitmeta::or_projection(static_cast<int>(n), beta);
  if (preset == "file") {
    std::istringstream in(logitmeta::load_file(p.text("path")));
    try {
      return logitmeta::read_birth_death(in);
    } catch (const logitmeta::InvalidArgument& e) {
      p.fail("path", e.what());
    }
  }
  p.fail("preset", "expected ehrenfest, lazy-ehrenfest, magnetization, or-projection or file");
}

const std::set<std::string> kChainKeys{"op", "preset", "n", "beta", "path"};

std::set<std::string> with_chain_keys(std::set<std::string> extra) {
  extra.insert(kChainKeys.begin(), kChainKeys.end());
  return extra;
}

// Index from "start" or, for labelled chains, "start_label".
int chain_state(const Params& p, const logitmeta::BirthDeathChain& chain, const std::string& key, int fallback) {
  const std::string label_key = key + "_label";
  if (p.has(label_key)) {
    try {
      return chain.index_of_label(p.number(label_key));
    } catch (const logitmeta::InvalidArgument& e) {
      p.fail(label_key, e.what());
    }
  }
  const auto v = p.integer(key, fallback);
  if (v < 0 || v > chain.top()) p.fail(key, "state out of range [0, " + std::to_string(chain.top()) + "]");
  return static_cast<int>(v);
}

logitmeta::SimConfig sim_config(const Params& p, const RunContext& ctx) {
  logitmeta::SimConfig config;
  config.steps = p.count("steps", 1000);
  config.replicas = p.count("replicas", 1);
  config.seed = p.count("seed", ctx.seed);
  config.record_every = p.count("record_every", 0);
  config.threads = ctx.threads;
  if (config.replicas == 0) p.fail("replicas", "must be positive");
  return config;
}

using Handler = std::function<Summary(const Params&, const RunContext&)>;

Summary op_gibbs(const Params& p, const RunContext& ctx) {
  p.only(kGameKeys);
  Summary s("gibbs");
  const auto game = game_of(p);
  s.parameters() = game.to_json();
  const auto pi = logitmeta::gibbs_distribution(game);
  s.measured()["size"] = pi.size();
  s.measured()["min"] = *std::min_element(pi.begin(), pi.end());
  s.measured()["max"] = *std::max_element(pi.begin(), pi.end());
  save(s, ctx, "gibbs.csv", render([&](std::ostream& o) { logitmeta::write_distribution(o, pi); }));
  return s;
}

Summary op_matrix(const Params& p, const RunContext& ctx) {
  p.only(kGameKeys);
  Summary s("matrix");
  const auto game = game_of(p);
  s.parameters() = game.to_json();
  const auto m = logitmeta::build_transition_matrix(game);
  s.measured()["size"] = m.size();
  s.measured()["max_row_sum_error"] = m.max_row_sum_error();
  save(s, ctx, "matrix.csv", render([&](std::ostream& o) { logitmeta::write_matrix(o, m); }));
  return s;
}

Summary op_stationary(const Params& p, const RunContext& ctx) {
  p.only(kGameKeys);
  Summary s("stationary");
  const auto game = game_of(p);
  s.parameters() = game.to_json();
  const auto m = logitmeta::build_transition_matrix(game);
  const auto pi = logitmeta::stationary_distribution(m);
  s.measured()["tv_to_gibbs"] = logitmeta::tv_distance(pi, logitmeta::gibbs_distribution(game));
  save(s, ctx, "stationary.csv", render([&](std::ostream& o) { logitmeta::write_distribution(o, pi); }));
  return s;
}

Summary op_evolve(const Params& p, const RunContext& ctx) {
  p.only(with_game_keys({"mu", "steps"}));
  Summary s("evolve");
  const auto game = game_of(p);
  const LogitKernel kernel(game);
  const auto mu = distribution_of(p, game, kernel, "mu", "uniform");
  const auto steps = p.count("steps", 1);
  s.parameters() = game.to_json();
  s.parameters()["mu"] = p.text("mu", "uniform");
  s.parameters()["steps"] = steps;
  const auto out = logitmeta::evolve(mu, kernel, steps);
  s.measured()["tv_to_start"] = logitmeta::tv_distance(out, mu);
  save(s, ctx, "evolved.csv", render([&](std::ostream& o) { logitmeta::write_distribution(o, out); }));
  return s;
}

Summary op_bottleneck(const Params& p, const RunContext&) {
  p.only(with_game_keys({"subset"}));
  Summary s("bottleneck");
  const auto game = game_of(p);
  const LogitKernel kernel(game);
  const auto set = subset_of(p, kernel.space(), "subset");
  s.parameters() = game.to_json();
  s.parameters()["subset"] = p.text("subset");
  const auto pi = logitmeta::gibbs_distribution(game);
  s.measured()["bottleneck_ratio"] = logitmeta::bottleneck_ratio(kernel, pi, set);
  s.measured()["subset_size"] = set.size();
  return s;
}

Summary op_hit_prob(const Params& p, const RunContext&) {
  p.only(with_game_keys({"a_set", "b_set", "start"}));
  Summary s("hit-prob");
  const auto game = game_of(p);
  const LogitKernel kernel(game);
  const auto a = subset_of(p, kernel.space(), "a_set");
  const auto b = subset_of(p, kernel.space(), "b_set");
  const auto start = state_of(p, game, "start", 0);
  s.parameters() = game.to_json();
  s.parameters()["a_set"] = p.text("a_set");
  s.parameters()["b_set"] = p.text("b_set");
  s.parameters()["start"] = start;
  s.measured()["probability"] = logitmeta::absorbing_hit_probability(kernel, a, b, start);
  return s;
}

Summary op_hit_cdf(const Params& p, const RunContext& ctx) {
  p.only(with_game_keys({"targets", "start", "t_max"}));
  Summary s("hit-cdf");
  const auto game = game_of(p);
  const LogitKernel kernel(game);
  const auto targets = subset_of(p, kernel.space(), "targets");
  const auto start = state_of(p, game, "start", 0);
  const auto t_max = p.count("t_max", 1000);
  s.parameters() = game.to_json();
  s.parameters()["targets"] = p.text("targets");
  s.parameters()["start"] = start;
  s.parameters()["t_max"] = t_max;
  const auto cdf = logitmeta::hitting_time_cdf(kernel, targets, start, t_max);
  s.measured()["final"] = cdf.back();
  emit_table(s, ctx, "hit_cdf.csv", {"t", "prob"}, curve_rows(cdf));
  return s;
}

Summary op_absorption_time(const Params& p, const RunContext&) {
  p.only(with_game_keys({"targets", "start"}));
  Summary s("absorption-time");
  const auto game = game_of(p);
  const LogitKernel kernel(game);
  const auto targets = subset_of(p, kernel.space(), "targets");
  const auto start = state_of(p, game, "start", 0);
  s.parameters() = game.to_json();
  s.parameters()["targets"] = p.text("targets");
  s.parameters()["start"] = start;
  s.measured()["expectation"] = logitmeta::expected_absorption_time(kernel, targets, start);
  return s;
}

Summary op_simulate(const Params& p, const RunContext& ctx) {
  p.only(with_game_keys({"start", "targets", "steps", "replicas", "seed", "record_every"}));
  Summary s("simulate");
  const auto game = game_of(p);
  const auto config = sim_config(p, ctx);
  const std::uint64_t ones = game.players() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << game.players()) - 1;
  const auto start = state_of(p, game, "start", ones);
  const std::string targets = p.text("targets", "all-zeros");
  s.parameters() = game.to_json();
  s.parameters()["start"] = start;
  s.parameters()["targets"] = targets;
  s.parameters()["steps"] = config.steps;
  s.parameters()["replicas"] = config.replicas;
  s.parameters()["seed"] = config.seed;
  logitmeta::StatePredicate predicate;
  try {
    predicate = logitmeta::state_predicate(game, targets);
  } catch (const logitmeta::InvalidArgument& e) {
    p.fail("targets", e.what());
  }
  const auto samples = logitmeta::sample_hitting_times(game, start, predicate, config);
  std::vector<std::vector<double>> rows;
  std::uint64_t censored = 0;
  double total = 0.0;
  for (std::size_t r = 0; r < samples.size(); ++r) {
    rows.push_back({static_cast<double>(r), static_cast<double>(samples[r].steps), samples[r].censored ? 1.0 : 0.0});
    censored += samples[r].censored;
    total += static_cast<double>(samples[r].steps);
  }
  s.measured()["censored"] = censored;
  s.measured()["mean_steps"] = total / static_cast<double>(samples.size());
  emit_table(s, ctx, "hitting_times.csv", {"replica", "steps", "censored"}, rows);
  if (config.record_every > 0) {
    std::vector<std::vector<double>> snaps;
    for (const auto& snap : logitmeta::simulate_trajectories(game, start, config)) {
      snaps.push_back({static_cast<double>(snap.replica), static_cast<double>(snap.t), static_cast<double>(snap.state)});
    }
    emit_table(s, ctx, "trajectories.csv", {"replica", "t", "state"}, snaps);
  }
  return s;
}

Summary op_bd_chain(const Params& p, const RunContext& ctx) {
  p.only(kChainKeys);
  Summary s("bd.chain");
  const auto chain = chain_of(p);
  s.parameters() = p.raw();
  s.measured()["top"] = chain.top();
  save(s, ctx, "chain.csv", render([&](std::ostream& o) { logitmeta::write_birth_death(o, chain); }));
  return s;
}

Summary op_bd_ruin(const Params& p, const RunContext&) {
  p.only(with_chain_keys({"start", "start_label", "low", "low_label", "high", "high_label"}));
  Summary s("bd.ruin");
  const auto chain = chain_of(p);
  const int start = chain_state(p, chain, "start", 1);
  const int low = chain_state(p, chain, "low", 0);
  const int high = chain_state(p, chain, "high", chain.top());
  if (!(low <= start && start <= high && low < high)) p.fail("start", "requires low <= start <= high and low < high");
  s.parameters() = p.raw();
  s.measured()["probability"] = logitmeta::ruin_probability(chain, start, low, high);
  s.measured()["start_label"] = chain.label(start);
  return s;
}

Summary op_bd_exit_time(const Params& p, const RunContext&) {
  p.only(with_chain_keys({"start", "start_label", "low", "low_label", "high", "high_label"}));
  Summary s("bd.exit-time");
  const auto chain = chain_of(p);
  const int start = chain_state(p, chain, "start", 1);
  const int low = chain_state(p, chain, "low", 0);
  const int high = chain_state(p, chain, "high", chain.top());
  if (!(low <= start && start <= high && low < high)) p.fail("start", "requires low <= start <= high and low < high");
  s.parameters() = p.raw();
  s.measured()["expectation"] = logitmeta::exit_time_expectation(chain, start, low, high);
  return s;
}

Summary op_bd_cdf(const Params& p, const RunContext& ctx) {
  p.only(with_chain_keys({"start", "start_label", "targets", "t_max"}));
  Summary s("bd.cdf");
  const auto chain = chain_of(p);
  const int start = chain_state(p, chain, "start", 1);
  std::vector<bool> targets(chain.size(), false);
  for (auto k : p.integers("targets", {0})) {
    if (k < 0 || k > chain.top()) p.fail("targets", "state out of range");
    targets[static_cast<std::size_t>(k)] = true;
  }
  const auto t_max = p.count("t_max", 1000);
  s.parameters() = p.raw();
  const auto cdf = logitmeta::hit_cdf_1d(chain, targets, start, t_max);
  s.measured()["final"] = cdf.back();
  emit_table(s, ctx, "hit_cdf.csv", {"t", "prob"}, curve_rows(cdf));
  return s;
}

Summary op_meta_certify(const Params& p, const RunContext& ctx) {
  p.only(with_game_keys({"mu", "epsilon_tv", "horizon", "mode"}));
  Summary s("meta.certify");
  const auto game = game_of(p);
  const LogitKernel kernel(game);
  const auto mu = distribution_of(p, game, kernel, "mu", "uniform");
  const double eps = p.number("epsilon_tv");
  if (!p.has("horizon")) p.fail("horizon", "required integer is missing");
  const auto horizon = p.count("horizon", 0);
  const std::string mode = p.text("mode", "exact");
  if (!(eps >= 0.0)) p.fail("epsilon_tv", "must be nonnegative");
  const std::string id = p.text("mu", "uniform");
  logitmeta::MetastabilityCertificate cert;
  if (mode == "exact") {
    cert = logitmeta::certify_exact(mu, kernel, eps, horizon, id);
  } else if (mode == "amplified") {
    cert = logitmeta::certify_amplified(mu, kernel, eps, horizon, id);
  } else {
    p.fail("mode", "expected exact or amplified");
  }
  s.parameters() = game.to_json();
  s.measured()["certificate"] = cert.to_json(ctx.out_dir.empty() ? "" : "drift.csv");
  emit_table(s, ctx, "drift.csv", {"t", "tv"}, curve_rows(cert.drift_curve));
  return s;
}

Summary op_meta_pseudo_mix(const Params& p, const RunContext& ctx) {
  p.only(with_game_keys({"mu", "starts", "epsilon_tv", "cap"}));
  Summary s("meta.pseudo-mix");
  const auto game = game_of(p);
  const LogitKernel kernel(game);
  const auto mu = distribution_of(p, game, kernel, "mu", "gibbs");
  const auto starts = subset_of(p, kernel.space(), "starts");
  const double eps = p.number("epsilon_tv");
  const auto cap = p.count("cap", 100000);
  s.parameters() = game.to_json();
  const auto report = logitmeta::pseudo_mix_time(mu, kernel, starts.members(), eps, cap, p.text("mu", "gibbs"));
  s.measured()["report"] = report.to_json();
  emit_table(s, ctx, "tv_curve.csv", {"t", "tv"}, curve_rows(report.tv_curve));
  return s;
}

Summary op_lump(const Params& p, const RunContext& ctx) {
  p.only(with_game_keys({"partition"}));
  Summary s("lump");
  const auto game = game_of(p);
  const LogitKernel kernel(game);
  const std::string partition = p.text("partition", "weight");
  std::vector<std::size_t> blocks;
  if (partition == "weight") {
    blocks = logitmeta::weight_partition(kernel.space());
  } else if (partition == "zeros") {
    blocks = logitmeta::zeros_partition(kernel.space());
  } else {
    p.fail("partition", "expected weight or zeros");
  }
  s.parameters() = game.to_json();
  s.parameters()["partition"] = partition;
  const auto report = logitmeta::lumpability_check(kernel, blocks);
  s.measured()["max_deviation"] = report.max_deviation;
  save(s, ctx, "lumped.csv", render([&](std::ostream& o) { logitmeta::write_matrix(o, report.lumped); }));
  return s;
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"gibbs", op_gibbs},
      {"matrix", op_matrix},
      {"stationary", op_stationary},
      {"evolve", op_evolve},
      {"bottleneck", op_bottleneck},
      {"hit-prob", op_hit_prob},
      {"hit-cdf", op_hit_cdf},
      {"absorption-time", op_absorption_time},
      {"simulate", op_simulate},
      {"bd.chain", op_bd_chain},
      {"bd.ruin", op_bd_ruin},
      {"bd.exit-time", op_bd_exit_time},
      {"bd.cdf", op_bd_cdf},
      {"meta.certify", op_meta_certify},
      {"meta.pseudo-mix", op_meta_pseudo_mix},
      {"lump", op_lump},
  };
  return table;
}

}  // namespace

std::vector<std::string> generic_operations() {
  std::vector<std::string> names;
  for (const auto& [name, h] : handlers()) names.push_back(name);
  return names;
}

Summary run_generic(const nlohmann::json& config, const RunContext& ctx) {
  const Params p(config, "config");
  const std::string op = p.text("op");
  const auto it = handlers().find(op);
  if (it == handlers().end()) p.fail("op", "unknown operation '" + op + "'");
  try {
    return it->second(p, ctx);
  } catch (const ConfigError&) {
    throw;
  } catch (const logitmeta::InvalidArgument& e) {
    throw ConfigError("config: " + std::string(e.what()));
  }
}

}  // namespace experiments
