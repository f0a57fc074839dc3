#include <algorithm>
#include <cmath>

#include "logitmeta/birth_death.hpp"
#include "logitmeta/chain.hpp"
#include "logitmeta/logit_kernel.hpp"
#include "logitmeta/metastability.hpp"
#include "logitmeta/rng.hpp"
#include "logitmeta/simulation.hpp"
#include "logitmeta/subsets.hpp"
#include "support.hpp"

namespace experiments {

using logitmeta::Distribution;
using logitmeta::GameSpec;
using logitmeta::LogitKernel;
using logitmeta::StateSet;

namespace {

GameSpec ring_game(const Params& p, int n, double beta, logitmeta::RingPayoffs defaults) {
  logitmeta::RingPayoffs pay{p.number("a", defaults.a), p.number("b", defaults.b), p.number("c", defaults.c),
                             p.number("d", defaults.d)};
  try {
    return GameSpec::ring(n, beta, pay);
  } catch (const logitmeta::InvalidArgument& e) {
    throw ConfigError(p.path() + ": " + e.what());
  }
}

// max_z Prob_z(tau_0 >= t) over `starts`, t = 0..t_max.
std::vector<double> worst_tail(const LogitKernel& kernel, const std::vector<std::size_t>& starts, std::uint64_t t_max) {
  std::vector<double> tail(t_max + 1, 0.0);
  const auto zero = StateSet::single(kernel.size(), 0);
  for (auto z : starts) {
    const auto cdf = logitmeta::hitting_time_cdf(kernel, zero, z, t_max);
    for (std::uint64_t t = 0; t <= t_max; ++t) {
      const double ge = t == 0 ? 1.0 : 1.0 - cdf[t - 1];
      tail[t] = std::max(tail[t], ge);
    }
  }
  return tail;
}

}  // namespace

Summary preset_ring_bottlenecks(const Params& p, const RunContext& ctx) {
  p.only({"n", "a", "b", "c", "d", "betas", "subsets", "epsilon_tv"});
  const auto n = static_cast<int>(p.integer("n", 5));
  const auto betas = p.numbers("betas", {0.5, 1.0, 2.0, 10.0});
  const std::uint64_t subsets = p.count("subsets", 100);
  const double eps = p.number("epsilon_tv", 0.1);
  if (n < 2 || n > 14) p.fail("n", "must lie in [2, 14]");

  Summary s("ring-bottlenecks");
  const GameSpec base = ring_game(p, n, 1.0, {2.0, 1.0, 0.0, 0.0});
  const double big = base.payoffs().zero_gain();
  const double small = base.payoffs().one_gain();
  s.parameters() = {{"n", n},         {"a", base.payoffs().a}, {"b", base.payoffs().b}, {"c", base.payoffs().c},
                    {"d", base.payoffs().d}, {"betas", betas}, {"subsets", subsets}, {"epsilon_tv", eps}};
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::vector<double>> rows;

  for (double beta : betas) {
    if (beta < 0.0) p.fail("betas", "must be nonnegative");
    const GameSpec game = base.with_beta(beta);
    const LogitKernel kernel(game);
    const auto pi = logitmeta::gibbs_distribution(game);
    const std::string tag = "beta=" + fmt(beta);

    const double bn_one = logitmeta::bottleneck_ratio(kernel, pi, StateSet::single(size, size - 1));
    const double bn_zero = logitmeta::bottleneck_ratio(kernel, pi, StateSet::single(size, 0));
    s.measured()[tag]["Bn_one"] = bn_one;
    s.measured()[tag]["Bn_zero"] = bn_zero;
    s.close("ring-singleton-bottleneck", tag + ": Bn({1}) == e^(-2 delta beta)", bn_one, std::exp(-2 * small * beta),
            1e-12);
    s.close("ring-singleton-bottleneck", tag + ": Bn({0}) == e^(-2 Delta beta)", bn_zero, std::exp(-2 * big * beta),
            1e-12);
    s.close("ring-singleton-bottleneck-exact", tag + ": Bn({1}) == 1/(1+e^(2 delta beta))", bn_one,
            logitmeta::logistic(-2 * small * beta), 1e-12);
    s.close("ring-singleton-bottleneck-exact", tag + ": Bn({0}) == 1/(1+e^(2 Delta beta))", bn_zero,
            logitmeta::logistic(-2 * big * beta), 1e-12);
    s.at_most("ring-singleton-bottleneck-bound", tag + ": Bn({1}) <= e^(-2 delta beta)", bn_one,
              std::exp(-2 * small * beta));
    rows.push_back({beta, bn_one, std::exp(-2 * small * beta), bn_zero, std::exp(-2 * big * beta)});

    const auto horizon = static_cast<std::uint64_t>(std::floor(eps * std::exp(2 * small * beta)));
    const auto cert = logitmeta::certify_amplified(Distribution::point_mass(size, size - 1), kernel, eps, horizon,
                                                   "pi_1");
    s.holds("ring-singleton-metastable", tag + ": pi_1 is (eps, floor(eps e^(2 delta beta)))-metastable", cert.valid);

    // Drift of pi restricted to S equals Bn(S).
    logitmeta::CounterRng rng(logitmeta::stream_key(ctx.seed, static_cast<std::uint64_t>(beta * 1024)));
    double worst = 0.0;
    for (std::uint64_t k = 0; k < subsets; ++k) {
      std::vector<std::size_t> members;
      while (members.empty()) {
        for (std::size_t x = 0; x < size; ++x) {
          if (rng() & 1) members.push_back(x);
        }
        if (members.size() == size) members.clear();
      }
      const StateSet set(size, members);
      const auto restricted = logitmeta::restricted_distribution(pi, set);
      const double drift = logitmeta::tv_distance(logitmeta::evolve(restricted, kernel, 1), restricted);
      worst = std::max(worst, std::abs(drift - logitmeta::bottleneck_ratio(kernel, pi, set)));
    }
    s.close("bottleneck-identity", tag + ": max |drift(pi_S) - Bn(S)| over random S", worst, 0.0, 1e-12);
  }
  emit_table(s, ctx, "bottlenecks.csv", {"beta", "Bn_one", "exp_small", "Bn_zero", "exp_big"}, rows);
  return s;
}

Summary preset_ring_pseudo(const Params& p, const RunContext& ctx) {
  p.only({"n", "a", "b", "c", "d", "beta", "depth", "lambda", "gamma", "depth_zero", "replicas"});
  const auto n = static_cast<int>(p.integer("n", 10));
  const double beta = p.number("beta", 6.0);
  const auto depth = static_cast<int>(p.integer("depth", 2));
  const double lambda = p.number("lambda", 0.5);
  const double gamma = p.number("gamma", 0.5);
  const auto depth0 = static_cast<int>(p.integer("depth_zero", 4));
  const std::uint64_t replicas = p.count("replicas", 1000);
  if (n < 3 || n > 14) p.fail("n", "must lie in [3, 14]");
  if (depth < 1 || depth > n) p.fail("depth", "must lie in [1, n]");
  if (depth0 < 1 || depth0 > n) p.fail("depth_zero", "must lie in [1, n]");
  if (!(lambda > 0.0)) p.fail("lambda", "must be positive");
  if (!(gamma > 0.0)) p.fail("gamma", "must be positive");

  Summary s("ring-pseudo");
  const GameSpec game = ring_game(p, n, beta, {2.0, 1.0, 0.0, 0.0});
  const auto& pay = game.payoffs();
  s.parameters() = {{"n", n},         {"a", pay.a},         {"b", pay.b},         {"c", pay.c},
                    {"d", pay.d},     {"beta", beta},       {"depth", depth},     {"lambda", lambda},
                    {"gamma", gamma}, {"depth_zero", depth0}, {"replicas", replicas}};
  if (pay.zero_gain() <= pay.one_gain()) s.warn("Delta == delta: no risk-dominant strategy");
  if (beta < std::log(static_cast<double>(n))) s.warn("beta < ln(n) at this scale");

  const LogitKernel kernel(game);
  const std::size_t size = kernel.size();
  const auto pi = logitmeta::gibbs_distribution(game);

  // pi_d from S*_d within gamma_d = 2/(2d+1) + lambda at t = 8 n^2 / lambda.
  {
    const auto t = static_cast<std::uint64_t>(std::ceil(8.0 * n * n / lambda));
    const double target = 2.0 / (2 * depth + 1) + lambda;
    const std::string spec = "Rstar>=" + std::to_string(depth);
    const auto set = logitmeta::named_subset(kernel.space(), spec);
    const auto mu = logitmeta::restricted_distribution(pi, set);
    const auto cert = logitmeta::certify_exact(mu, kernel, lambda / 2.0, t, "pi_d", true);
    s.holds("ring-pseudo-restricted-metastable",
            "pi_d is (lambda/2, " + std::to_string(t) + ")-metastable (exact)", cert.valid);
    const auto minimal = minimal_elements(set.members());
    const auto tail = worst_tail(kernel, minimal, t);
    std::vector<double> pair_bound(tail.size());
    for (std::size_t k = 0; k < tail.size(); ++k) pair_bound[k] = std::min(1.0, 2.0 * tail[k]);
    s.measured()["S*_d_size"] = set.size();
    s.measured()["S*_d_minimal_starts"] = minimal.size();
    if (cert.valid) {
      const auto bound = logitmeta::tv_bound_via_coupling(cert, mu, set.members(), pair_bound);
      s.measured()["pi_d_bound_at_t"] = bound[t];
      s.at_most("ring-pseudo-restricted", "coupling bound on ||P^t(x,.) - pi_d||, x in S*_d, t=" + std::to_string(t),
                bound[t], target);
      double worst = 0.0;
      for (auto z : minimal) {
        worst = std::max(worst, logitmeta::tv_distance(
                                    logitmeta::evolve(Distribution::point_mass(size, z), kernel, t), mu));
      }
      s.measured()["pi_d_exact_minimal_at_t"] = worst;
      s.at_most("ring-pseudo-restricted-exact", "exact max over minimal starts at t=" + std::to_string(t), worst,
                bound[t]);
      emit_table(s, ctx, "coupling_bound_pi_d.csv", {"t", "tv"}, curve_rows(bound, 10));
    }

    // Monte Carlo estimate of the same pair bound with P(tau_0 > t).
    std::vector<std::uint64_t> starts(set.members().begin(), set.members().end());
    logitmeta::SimConfig config;
    config.replicas = replicas;
    config.seed = ctx.seed;
    config.threads = ctx.threads;
    const auto est = logitmeta::empirical_tv_bound(game, starts, t, config);
    const auto strict = worst_tail(kernel, minimal, t + 1);
    const double exact_strict = std::min(1.0, 2.0 * strict[t + 1]);
    s.measured()["mc_bound"] = est.bound;
    s.measured()["mc_half_width"] = est.half_width;
    s.measured()["exact_pair_bound"] = exact_strict;
    s.at_most("ring-pseudo-monte-carlo", "|MC pair bound - exact| vs 95% Hoeffding half-width",
              std::abs(est.bound - exact_strict), est.half_width);
  }

  // pi_0 from S*_{d0} within gamma at t = 8 n^2 / gamma, via the hitting bound.
  {
    const auto t = static_cast<std::uint64_t>(std::ceil(8.0 * n * n / gamma));
    const auto set = logitmeta::named_subset(kernel.space(), "Rstar>=" + std::to_string(depth0));
    const auto mu = Distribution::point_mass(size, 0);
    const auto cert = logitmeta::certify_exact(mu, kernel, gamma / 2.0, t, "pi_0", true);
    s.holds("ring-pseudo-zero-metastable", "pi_0 is (gamma/2, " + std::to_string(t) + ")-metastable (exact)",
            cert.valid);
    const auto minimal = minimal_elements(set.members());
    if (cert.valid) {
      std::vector<double> worst_bound;
      const auto zero = StateSet::single(size, 0);
      for (auto z : minimal) {
        const auto cdf = logitmeta::hitting_time_cdf(kernel, zero, z, t);
        const auto bound = logitmeta::tv_bound_via_hitting(cert, cdf);
        if (worst_bound.empty()) worst_bound = bound;
        for (std::size_t k = 0; k < bound.size(); ++k) worst_bound[k] = std::max(worst_bound[k], bound[k]);
      }
      s.measured()["pi_0_bound_at_t"] = worst_bound[t];
      s.at_most("ring-pseudo-zero", "hitting bound on ||P^t(x,.) - pi_0||, x in S*_d0, t=" + std::to_string(t),
                worst_bound[t], gamma);
      emit_table(s, ctx, "hitting_bound_pi_0.csv", {"t", "tv"}, curve_rows(worst_bound, 10));
    }
  }

  // Prob_x(tau_{S*_d u {1}} <= n^2) from S_z, z < d: reported only.
  {
    const auto horizon = static_cast<std::uint64_t>(n) * n;
    const auto target = logitmeta::named_subset(kernel.space(), "Rstar>=" + std::to_string(depth))
                            .united(StateSet::single(size, size - 1));
    for (int z = 1; z < depth; ++z) {
      const auto from = logitmeta::named_subset(kernel.space(), "zeros==" + std::to_string(z));
      double worst = 1.0;
      for (auto x : from.members()) {
        if (target.contains(x)) continue;
        worst = std::min(worst, logitmeta::hitting_time_cdf(kernel, target, x, horizon).back());
      }
      const double stated = 2.0 * z / (2.0 * z + 1.0) + std::pow(3.0, -z);
      s.measured()["medium"]["z=" + std::to_string(z)] = {{"min_probability", worst}, {"stated", stated}};
    }
  }
  return s;
}

Summary preset_ring_nodom(const Params& p, const RunContext& ctx) {
  p.only({"n", "a", "b", "c", "d", "beta", "tolerance", "epsilon_tv", "level_sizes"});
  const auto n = static_cast<int>(p.integer("n", 8));
  const double beta = p.number("beta", 10.0);
  const double tol = p.number("tolerance", 0.05);
  const double eps = p.number("epsilon_tv", 0.1);
  const auto level_sizes = p.integers("level_sizes", {3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
  if (n < 3 || n > 14) p.fail("n", "must lie in [3, 14]");

  Summary s("ring-nodom");
  const GameSpec game = ring_game(p, n, beta, {1.0, 1.0, 0.0, 0.0});
  const auto& pay = game.payoffs();
  const double gain = pay.zero_gain();
  s.parameters() = {{"n", n},         {"a", pay.a},         {"b", pay.b},      {"c", pay.c},
                    {"d", pay.d},     {"beta", beta},       {"tolerance", tol}, {"epsilon_tv", eps},
                    {"level_sizes", level_sizes}};
  if (std::abs(gain - pay.one_gain()) > 1e-12) p.fail("a", "requires Delta == delta");

  for (auto m : level_sizes) {
    if (m < 3 || m > 20) p.fail("level_sizes", "sizes must lie in [3, 20]");
    const GameSpec g = GameSpec::ring(static_cast<int>(m), beta, pay);
    double worst = 0.0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << m); ++x) {
      const auto profile = logitmeta::profile_of_state(g, x);
      const int level = *logitmeta::profile_stats(g, profile).level;
      worst = std::max(worst, std::abs(logitmeta::potential(g, profile) - (m - 2.0 * level) * gain));
    }
    s.close("ring-level-potential", "n=" + std::to_string(m) + ": max |Phi(x) - (n - 2 l(x)) Delta|", worst, 0.0,
            1e-12);
  }

  const LogitKernel kernel(game);
  const std::size_t size = kernel.size();
  const double drift_formula = logitmeta::logistic(-2.0 * gain * beta);
  const auto horizon = static_cast<std::uint64_t>(std::floor(std::min(eps * std::exp(2.0 * gain * beta), 1e18)));
  std::vector<std::vector<double>> rows;
  for (int d = 0; d <= n; ++d) {
    std::vector<double> w(size, 0.0);
    w[0] = static_cast<double>(d) / n;
    w[size - 1] += 1.0 - static_cast<double>(d) / n;
    const Distribution mu(w);
    const auto cert = logitmeta::certify_amplified(mu, kernel, eps, horizon, "mu_" + std::to_string(d));
    s.close("ring-nodom-drift", "d=" + std::to_string(d) + ": ||mu_d P - mu_d|| == 1/(1+e^(2 Delta beta))",
            cert.one_step_drift, drift_formula, 1e-12);
    s.holds("ring-nodom-metastable", "d=" + std::to_string(d) + ": (eps, eps e^(2 Delta beta))-metastable",
            cert.valid);
  }

  const auto zero = StateSet::single(size, 0);
  const auto one = StateSet::single(size, size - 1);
  double worst = 0.0;
  std::uint64_t worst_state = 0;
  for (std::size_t x = 1; x + 1 < size; ++x) {
    const double px = logitmeta::absorbing_hit_probability(kernel, zero, one, x);
    const int zeros = n - logitmeta::StateSpace::weight(x);
    const double expected = static_cast<double>(zeros) / n;
    rows.push_back({static_cast<double>(x), static_cast<double>(zeros), px, expected});
    if (std::abs(px - expected) > worst) {
      worst = std::abs(px - expected);
      worst_state = x;
    }
  }
  s.measured()["absorption_worst_state"] = worst_state;
  s.at_most("ring-nodom-absorption", "max_x |Prob_x(hit 0 before 1) - |x|_0/n|", worst, tol);
  emit_table(s, ctx, "absorption.csv", {"state", "zeros", "p", "expected"}, rows);
  return s;
}

}  // namespace experiments
