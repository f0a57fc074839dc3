#include <algorithm>
#include <cmath>

#include "logitmeta/birth_death.hpp"
#include "logitmeta/chain.hpp"
#include "logitmeta/logit_kernel.hpp"
#include "logitmeta/metastability.hpp"
#include "logitmeta/subsets.hpp"
#include "support.hpp"

namespace experiments {

using logitmeta::Distribution;
using logitmeta::GameSpec;
using logitmeta::LogitKernel;
using logitmeta::StateSet;

namespace {

// State with the lowest `minus` players on -1 and everyone else on +1.
std::size_t plus_state(int n, int minus) {
  const std::size_t all = (std::size_t{1} << n) - 1;
  return all & ~((std::size_t{1} << minus) - 1);
}

}  // namespace

Summary preset_ising_pi_meta(const Params& p, const RunContext& ctx) {
  p.only({"n", "betas", "c"});
  const auto n = static_cast<int>(p.integer("n", 10));
  const auto betas = p.numbers("betas", {0.5, 1.0, 1.5, 2.0});
  const double c = p.number("c", 7.0);
  if (n < 2 || n > 20) p.fail("n", "must lie in [2, 20]");
  if (c <= 2.0) p.fail("c", "must exceed 2");

  Summary s("ising-pi-meta");
  s.parameters() = {{"n", n}, {"betas", betas}, {"c", c}};
  const std::size_t size = std::size_t{1} << n;
  const double epsilon = 1.0 / n;
  const double threshold = c * std::log(static_cast<double>(n)) / n;
  const auto horizon = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(n), c - 2.0)));
  std::vector<std::vector<double>> rows;

  for (double beta : betas) {
    if (beta < 0.0) p.fail("betas", "must be nonnegative");
    const LogitKernel kernel(GameSpec::ising(n, beta));
    const std::string tag = "beta=" + fmt(beta);
    const double stated = 1.0 / (1.0 + std::exp(beta * (n - 2)));
    const double exact = logitmeta::logistic(-2.0 * beta * (n - 1));
    for (const auto& [name, state] : {std::pair{"pi_plus", size - 1}, std::pair{"pi_minus", std::size_t{0}}}) {
      const auto mu = Distribution::point_mass(size, state);
      const auto cert = logitmeta::certify_amplified(mu, kernel, epsilon, horizon, name);
      const std::string where = tag + ", " + name;
      s.measured()[where]["one_step_drift"] = cert.one_step_drift;
      s.measured()[where]["certificate"] = cert.to_json();
      s.close("ising-pi-one-step-drift", where + ": drift == 1/(1+e^(beta(n-2)))", cert.one_step_drift, stated, 1e-12);
      s.close("ising-pi-one-step-drift-exact", where + ": drift == 1/(1+e^(2 beta(n-1)))", cert.one_step_drift, exact,
              1e-12);
      s.at_most("ising-pi-one-step-drift-bound", where + ": drift <= 1/(1+e^(beta(n-2)))", cert.one_step_drift,
                stated);
      if (beta >= threshold) {
        s.holds("ising-pi-metastable", where + ": (1/n, n^(c-2))-metastable by amplification", cert.valid);
      } else {
        s.warn(where + ": beta < c ln(n)/n = " + fmt(threshold) + ", metastability claim not asserted");
      }
    }
    rows.push_back({beta, s.measured()[tag + ", pi_plus"]["one_step_drift"].get<double>(), stated, exact});
  }
  emit_table(s, ctx, "drift.csv", {"beta", "drift", "stated", "exact"}, rows);
  return s;
}

Summary preset_ising_convergence(const Params& p, const RunContext& ctx) {
  p.only({"n", "beta", "magnetization", "t_begin", "t_end", "threshold", "epsilon_tv", "c", "spot_checks"});
  const auto n = static_cast<int>(p.integer("n", 10));
  const double beta = p.number("beta", 1.5);
  const auto k = static_cast<int>(p.integer("magnetization", 8));
  const std::uint64_t t_begin = p.count("t_begin", 1000);
  const std::uint64_t t_end = p.count("t_end", 100000);
  const double threshold = p.number("threshold", 0.3);
  const double eps = p.number("epsilon_tv", 1.0 / n);
  const double c = p.number("c", 7.0);
  const auto spots = p.integers("spot_checks", {1000, 10000, 100000});
  if (n < 2 || n > 14) p.fail("n", "must lie in [2, 14]");
  if (k <= 0 || k > n || (n - k) % 2 != 0) p.fail("magnetization", "must lie in (0, n] with the parity of n");
  if (t_begin > t_end) p.fail("t_begin", "must not exceed t_end");
  for (auto t : spots) {
    if (t < 0 || static_cast<std::uint64_t>(t) > t_end) p.fail("spot_checks", "every time must lie in [0, t_end]");
  }

  Summary s("ising-convergence");
  s.parameters() = {{"n", n},         {"beta", beta}, {"magnetization", k},
                    {"t_begin", t_begin}, {"t_end", t_end}, {"threshold", threshold},
                    {"epsilon_tv", eps}, {"c", c},      {"spot_checks", spots}};
  const double hypothesis = c * std::log(static_cast<double>(n)) / n;
  if (beta < hypothesis) {
    s.warn("beta = " + fmt(beta) + " is below c ln(n)/n = " + fmt(hypothesis) + " at this scale");
  }
  if (beta * k * k <= c * std::log(static_cast<double>(n))) {
    s.warn("beta k^2 <= c ln(n) at this scale");
  }

  const std::size_t size = std::size_t{1} << n;
  const LogitKernel kernel(GameSpec::ising(n, beta));
  const int minus = (n - k) / 2;
  // Against pi_+ from magnetization +k, and against pi_- from -k.
  const std::pair<std::string, std::pair<std::size_t, std::size_t>> cases[] = {
      {"pi_plus", {size - 1, plus_state(n, minus)}},
      {"pi_minus", {0, (std::size_t{1} << minus) - 1}},
  };
  for (const auto& [name, pair] : cases) {
    const auto [target, start] = pair;
    const auto mu = Distribution::point_mass(size, target);
    const auto cert = logitmeta::certify_exact(mu, kernel, eps, t_end, name, true);
    s.holds("ising-pi-metastable", name + ": exact (" + fmt(eps) + ", " + std::to_string(t_end) + ")-metastable",
            cert.valid);
    const auto cdf = logitmeta::hitting_time_cdf(kernel, StateSet::single(size, target), start, t_end);
    const auto exact = logitmeta::tv_curve(mu, kernel, {start}, t_end);
    const std::string where = name + ", S(x)=" + std::string(name == "pi_plus" ? "+" : "-") + std::to_string(k);
    if (!cert.valid) {
      s.warn(where + ": point mass not metastable over the horizon, hitting bound skipped");
    } else {
      const auto bound = logitmeta::tv_bound_via_hitting(cert, cdf);
      const double worst_bound = max_over(bound, t_begin, t_end);
      s.measured()[where]["max_bound_on_window"] = worst_bound;
      s.at_most("ising-convergence-hitting-bound",
                where + ": max hitting bound over [" + std::to_string(t_begin) + ", " + std::to_string(t_end) + "]",
                worst_bound, threshold);
      double excess = -1.0;
      for (std::size_t t = 0; t < exact.size(); ++t) excess = std::max(excess, exact[t] - bound[t]);
      s.at_most("ising-convergence-bound-dominates", where + ": max_t (exact - bound)", excess, 1e-12);
      emit_table(s, ctx, "bound_" + name + ".csv", {"t", "tv"}, curve_rows(bound, 100));
    }
    for (auto t : spots) {
      const double tv = exact[static_cast<std::size_t>(t)];
      s.measured()[where]["spot"][std::to_string(t)] = tv;
      s.at_most("ising-convergence-exact", where + ": ||P^t(x,.) - pi|| at t=" + std::to_string(t), tv, threshold);
    }
    emit_table(s, ctx, "hit_cdf_" + name + ".csv", {"t", "prob"}, curve_rows(cdf, 100));
    emit_table(s, ctx, "tv_" + name + ".csv", {"t", "tv"}, curve_rows(exact, 100));
  }
  return s;
}

}  // namespace experiments
