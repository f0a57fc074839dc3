#include <algorithm>
#include <cmath>

#include "logitmeta/bd_analysis.hpp"
#include "logitmeta/birth_death.hpp"
#include "logitmeta/rng.hpp"
#include "support.hpp"

namespace experiments {

using logitmeta::BirthDeathChain;

namespace {

// Interior rates eps up and delta down on {0..n}, absorbing at both ends.
BirthDeathChain constant_chain(int n, double eps, double delta) {
  BirthDeathChain c;
  c.up.assign(n + 1, eps);
  c.down.assign(n + 1, delta);
  c.up[0] = c.down[0] = c.up[n] = c.down[n] = 0.0;
  c.absorbing_low = c.absorbing_high = true;
  return c;
}

double uniform_in(logitmeta::CounterRng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

int int_in(logitmeta::CounterRng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
}

// Largest index whose label is <= value, smallest index whose label is >= value.
int index_at_most(const BirthDeathChain& c, double value) {
  int best = -1;
  for (int k = 0; k <= c.top(); ++k) {
    if (c.label(k) <= value) best = k;
  }
  return best;
}

int index_at_least(const BirthDeathChain& c, double value) {
  for (int k = 0; k <= c.top(); ++k) {
    if (c.label(k) >= value) return k;
  }
  return -1;
}

}  // namespace

Summary preset_bd_suite(const Params& p, const RunContext& ctx) {
  p.only({"instances", "max_n", "lazy_n", "lazy_horizon", "magnetization_max_n", "betas", "ehrenfest_sizes",
          "ehrenfest_c"});
  const std::uint64_t instances = p.count("instances", 500);
  const auto max_n = static_cast<int>(p.integer("max_n", 200));
  const auto lazy_n = static_cast<int>(p.integer("lazy_n", 64));
  const std::uint64_t lazy_horizon = p.count("lazy_horizon", 4096);
  const auto mag_n = static_cast<int>(p.integer("magnetization_max_n", 20));
  const auto betas = p.numbers("betas", {0.5, 1.0, 2.0});
  const auto sizes = p.integers("ehrenfest_sizes", {16, 32, 64, 128});
  const double c = p.number("ehrenfest_c", 2.0);
  if (max_n < 2 || max_n > 100000) p.fail("max_n", "must lie in [2, 100000]");
  if (lazy_n < 2 || lazy_n > 100000) p.fail("lazy_n", "must lie in [2, 100000]");
  if (mag_n < 2 || mag_n > 10000) p.fail("magnetization_max_n", "must lie in [2, 10000]");
  for (auto n : sizes) {
    if (n < 4 || n > 100000) p.fail("ehrenfest_sizes", "sizes must lie in [4, 100000]");
  }

  Summary s("bd-suite");
  s.parameters() = {{"instances", instances},     {"max_n", max_n}, {"lazy_n", lazy_n},
                    {"lazy_horizon", lazy_horizon}, {"magnetization_max_n", mag_n},
                    {"betas", betas},              {"ehrenfest_sizes", sizes}, {"ehrenfest_c", c}};

  // Closed form for constant rates against the tridiagonal solve.
  {
    logitmeta::CounterRng rng(logitmeta::stream_key(ctx.seed, 0));
    std::vector<std::vector<double>> rows;
    double worst = 0.0;
    std::uint64_t degenerate = 0;
    for (std::uint64_t i = 0; i < instances; ++i) {
      const int n = int_in(rng, 2, max_n);
      const int h = int_in(rng, 1, n - 1);
      const double eps = uniform_in(rng, 0.01, 0.5);
      // Every fifth instance sits on r = 1, where the closed form switches to h/n.
      const double delta = i % 5 == 0 ? eps : uniform_in(rng, 0.01, 0.5);
      const auto closed = logitmeta::ruin_probability_constant_rates(n, h, eps, delta);
      const double oracle = logitmeta::ruin_probability(constant_chain(n, eps, delta), h);
      degenerate += closed.degenerate;
      const double diff = std::abs(closed.probability - oracle);
      worst = std::max(worst, diff);
      rows.push_back({static_cast<double>(n), static_cast<double>(h), eps, delta, closed.probability, oracle, diff});
    }
    s.measured()["ruin_max_absdiff"] = worst;
    s.close("bd-constant-rate-ruin", std::to_string(instances) + " random instances: max |closed - solve|", worst, 0.0,
            1e-10);
    s.holds("bd-constant-rate-ruin", "no degenerate instance drawn", degenerate == 0);
    emit_table(s, ctx, "ruin_table.csv", {"n", "h", "eps", "delta", "closed", "oracle", "absdiff"}, rows);
  }

  // alpha^h dominates the probability of reaching 0 before the top.
  {
    logitmeta::CounterRng rng(logitmeta::stream_key(ctx.seed, 1));
    double worst = -1.0;
    std::vector<std::vector<double>> rows;
    for (std::uint64_t i = 0; i < instances; ++i) {
      const int n = int_in(rng, 2, max_n);
      const int h = int_in(rng, 1, n - 1);
      const double alpha = uniform_in(rng, 0.05, 0.99);
      BirthDeathChain chain = constant_chain(n, 0.0, 0.0);
      for (int k = 1; k < n; ++k) {
        chain.up[k] = uniform_in(rng, 0.05, 0.5);
        chain.down[k] = chain.up[k] * alpha * rng.uniform();
      }
      const double exact = 1.0 - logitmeta::ruin_probability(chain, h);
      const double bound = logitmeta::ruin_bound_geometric(chain, h, alpha);
      worst = std::max(worst, exact - bound);
      rows.push_back({static_cast<double>(n), static_cast<double>(h), alpha, exact, bound});
    }
    s.measured()["geometric_max_excess"] = worst;
    s.at_most("bd-geometric-bound", std::to_string(instances) + " random chains: max (exact - alpha^h)", worst, 1e-12);
    emit_table(s, ctx, "geometric_bound.csv", {"n", "h", "alpha", "exact", "bound"}, rows);
  }

  // The lazy chain exits where the chain does, and no sooner.
  {
    const auto urn = logitmeta::ehrenfest(lazy_n);
    const auto slow = logitmeta::lazy(urn);
    double worst = 0.0;
    for (int h = 1; h < lazy_n; ++h) {
      worst = std::max(worst, std::abs(logitmeta::ruin_probability(urn, h, 0, lazy_n) -
                                       logitmeta::ruin_probability(slow, h, 0, lazy_n)));
    }
    s.close("bd-lazy-exit-location", "Ehrenfest n=" + std::to_string(lazy_n) + ": max |exit(P) - exit((P+I)/2)|", worst,
            0.0, 1e-12);
    std::vector<bool> target(lazy_n + 1, false);
    target[0] = true;
    double excess = -1.0;
    std::vector<std::vector<double>> rows;
    for (int b = 1; b <= lazy_n; ++b) {
      const auto fast_cdf = logitmeta::hit_cdf_1d(urn, target, b, lazy_horizon);
      const auto slow_cdf = logitmeta::hit_cdf_1d(slow, target, b, lazy_horizon);
      for (std::size_t t = 0; t < fast_cdf.size(); ++t) excess = std::max(excess, slow_cdf[t] - fast_cdf[t]);
      if (b == 1) {
        for (std::size_t t = 0; t < fast_cdf.size(); t += 16) {
          rows.push_back({static_cast<double>(t), fast_cdf[t], slow_cdf[t]});
        }
      }
    }
    s.at_most("bd-lazy-slowdown", "Ehrenfest n=" + std::to_string(lazy_n) + ": max_t,b (lazy cdf - cdf)", excess, 0.0);
    emit_table(s, ctx, "lazy_cdf_from_1.csv", {"t", "prob", "lazy_prob"}, rows);
  }

  // Ehrenfest urn: Prob_k(tau_0 < n ln n + c n) <= 48 e^c / n, decreasing in k.
  {
    std::vector<std::vector<double>> rows;
    for (auto n : sizes) {
      const auto urn = logitmeta::ehrenfest(static_cast<int>(n));
      const double t = n * std::log(static_cast<double>(n)) + c * n;
      const auto steps = static_cast<std::uint64_t>(std::ceil(t)) - 1;
      std::vector<bool> target(n + 1, false);
      target[0] = true;
      double prob[4] = {};
      for (int k = 1; k <= 3; ++k) prob[k] = logitmeta::hit_cdf_1d(urn, target, k, steps).back();
      const std::string tag = "n=" + std::to_string(n);
      const double bound = 48.0 * std::exp(c) / n;
      s.at_most("ehrenfest-early-zero", tag + ": Prob_1(tau_0 < n ln n + c n) <= 48 e^c / n", prob[1], bound);
      s.holds("ehrenfest-early-zero-monotone", tag + ": Prob_1 >= Prob_2 >= Prob_3",
              prob[1] >= prob[2] && prob[2] >= prob[3]);
      s.at_most("ehrenfest-early-zero-steps", tag + ": Prob_1 - Prob_3 <= 4/n", prob[1] - prob[3], 4.0 / n);
      rows.push_back({static_cast<double>(n), prob[1], prob[2], prob[3], bound});
    }
    emit_table(s, ctx, "ehrenfest_early_zero.csv", {"n", "p1", "p2", "p3", "bound"}, rows);
  }

  // Magnetization chain: E_k[tau_{0,n}] <= n^3 for k >= 0.
  {
    std::vector<std::vector<double>> rows;
    double worst_ratio = 0.0;
    for (double beta : betas) {
      for (int n = 2; n <= mag_n; ++n) {
        const auto chain = logitmeta::magnetization_chain(n, beta);
        const int low = index_at_most(chain, 0.0);
        const int high = chain.top();
        double worst = 0.0;
        for (int h = std::max(low, 0); h <= high; ++h) {
          if (chain.label(h) < 0) continue;
          worst = std::max(worst, logitmeta::exit_time_expectation(chain, h, low, high));
        }
        worst_ratio = std::max(worst_ratio, worst / std::pow(n, 3));
        rows.push_back({beta, static_cast<double>(n), worst, std::pow(n, 3)});
      }
    }
    s.at_most("magnetization-exit-time", "max over n <= " + std::to_string(mag_n) + ", beta, k >= 0 of E_k[tau]/n^3",
              worst_ratio, 1.0);
    emit_table(s, ctx, "magnetization_exit_time.csv", {"beta", "n", "max_expectation", "n_cubed"}, rows);
  }

  // Leaving (0, n/2) through 0 from k, and (0, n) through 0 from k >= n/2.
  {
    const int n = 10;
    const double beta = 1.0;
    const int k = 4;
    const auto chain = logitmeta::magnetization_chain(n, beta);
    const int low = index_at_most(chain, 0.0);
    const int high = index_at_least(chain, n / 2.0);
    const double prob = 1.0 - logitmeta::ruin_probability(chain, chain.index_of_label(k), low, high);
    s.measured()["maghit0beforehalf"] = prob;
    s.at_most("magnetization-exit-half", "n=10, beta=1, k=4: Prob_k(exit (0, n/2) low) <= e^(-beta k^2/16)", prob,
              std::exp(-beta * k * k / 16.0));
    if (beta * k * k >= 16.0 * std::log(static_cast<double>(n)) && beta >= 6.0 / n) {
      s.at_most("magnetization-exit-half", "n=10, beta=1, k=4: Prob_k(exit (0, n/2) low) <= 1/n", prob, 1.0 / n);
    } else {
      s.warn("n=10, beta=1, k=4: beta k^2 < 16 ln n, the 1/n bound is not asserted");
    }
  }
  {
    const int n = 10;
    const double beta = 2.0;
    const auto chain = logitmeta::magnetization_chain(n, beta);
    const int low = index_at_most(chain, 0.0);
    const int high = chain.top();
    if (beta < 8.0 * std::log(static_cast<double>(n)) / n) s.warn("beta < 8 ln(n)/n for the exit-through-0 check");
    for (int k : {6, 8}) {
      const double prob = 1.0 - logitmeta::ruin_probability(chain, chain.index_of_label(k), low, high);
      s.measured()["maghit0beforen"]["k=" + std::to_string(k)] = prob;
      s.at_most("magnetization-exit-zero", "n=10, beta=2, k=" + std::to_string(k) + ": Prob_k(exit (0, n) low) <= (2/n)^(n/8)",
                prob, std::pow(2.0 / n, n / 8.0));
    }
  }
  return s;
}

}  // namespace experiments
