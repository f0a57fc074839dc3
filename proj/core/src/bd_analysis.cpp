#include "logitmeta/bd_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "logitmeta/error.hpp"
#include "logitmeta/linalg.hpp"

namespace logitmeta {

namespace {

constexpr double kUnitRatio = 1e-12;

void check_interval(const BirthDeathChain& chain, int h, int low, int high) {
  chain.validate();
  if (low < 0 || high > chain.top() || low >= high) {
    throw InvalidArgument("interval [" + std::to_string(low) + ", " + std::to_string(high) + "] is not inside the chain");
  }
  if (h < low || h > high) throw InvalidArgument("start " + std::to_string(h) + " outside the interval");
}

double rate(const std::vector<double>& v, int k) { return v[static_cast<std::size_t>(k)]; }

// Interior rows low+1..high-1 of the generator restricted to the interval.
struct InteriorSystem {
  std::vector<double> lower, diag, upper;
};

InteriorSystem interior_system(const BirthDeathChain& chain, int low, int high) {
  const auto m = static_cast<std::size_t>(high - low - 1);
  InteriorSystem s{std::vector<double>(m), std::vector<double>(m), std::vector<double>(m)};
  for (std::size_t i = 0; i < m; ++i) {
    const int k = low + 1 + static_cast<int>(i);
    s.lower[i] = -rate(chain.down, k);
    s.upper[i] = -rate(chain.up, k);
    s.diag[i] = rate(chain.up, k) + rate(chain.down, k);
  }
  return s;
}

// Extent of the states reachable from h without leaving [low, high].
std::pair<int, int> reachable(const BirthDeathChain& chain, int h, int low, int high) {
  int lo = h;
  while (lo > low && rate(chain.down, lo) > 0.0) --lo;
  int hi = h;
  while (hi < high && rate(chain.up, hi) > 0.0) ++hi;
  return {lo, hi};
}

}  // namespace

RuinResult ruin_probability_constant_rates(int n, int h, double eps, double delta) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (h < 0 || h > n) throw InvalidArgument("h must lie in [0, n]");
  if (!std::isfinite(eps) || !std::isfinite(delta) || eps < 0.0 || delta < 0.0 || eps + delta > 1.0 + 1e-15) {
    throw InvalidArgument("need eps, delta >= 0 and eps + delta <= 1");
  }
  if (h == 0) return {0.0, false};
  if (h == n) return {1.0, false};
  if (eps == 0.0) return {0.0, true};
  if (delta == 0.0) return {1.0, true};

  const double log_r = std::log(delta) - std::log(eps);
  if (std::abs(delta / eps - 1.0) < kUnitRatio) return {static_cast<double>(h) / n, false};
  double value;
  if (log_r < 0.0) {
    value = std::expm1(h * log_r) / std::expm1(n * log_r);
  } else {
    // Rewrite with s = 1/r < 1 to keep every power bounded.
    const double log_s = -log_r;
    value = std::exp((n - h) * log_s) * std::expm1(h * log_s) / std::expm1(n * log_s);
  }
  return {std::clamp(value, 0.0, 1.0), false};
}

double ruin_probability(const BirthDeathChain& chain, int h) { return ruin_probability(chain, h, 0, chain.top()); }

double ruin_probability(const BirthDeathChain& chain, int h, int low, int high) {
  check_interval(chain, h, low, high);
  if (h == high) return 1.0;
  if (h == low) return 0.0;
  const auto [lo, hi] = reachable(chain, h, low, high);
  if (lo > low && hi < high) {
    throw NotAbsorbing("from " + std::to_string(h) + " the chain is confined to [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "] and never exits");
  }
  if (hi < high) return 0.0;
  if (lo > low) return 1.0;

  InteriorSystem s = interior_system(chain, low, high);
  std::vector<double> rhs(s.diag.size(), 0.0);
  rhs.back() = rate(chain.up, high - 1);
  const auto alpha = solve_tridiagonal(s.lower, s.diag, s.upper, rhs);
  return std::clamp(alpha[static_cast<std::size_t>(h - low - 1)], 0.0, 1.0);
}

double ruin_bound_geometric(const BirthDeathChain& chain, int h, double alpha) {
  chain.validate();
  if (h < 0 || h > chain.top()) throw InvalidArgument("start outside the chain");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in [0, 1)");
  int worst = -1;
  double worst_ratio = alpha;
  for (int k = 1; k < chain.top(); ++k) {
    const double p = rate(chain.up, k);
    const double q = rate(chain.down, k);
    const double ratio = p > 0.0 ? q / p : (q > 0.0 ? INFINITY : 0.0);
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst = k;
    }
  }
  if (worst >= 0) {
    throw InvalidArgument("rate ratio q/p = " + std::to_string(worst_ratio) + " exceeds alpha at k=" +
                          std::to_string(worst));
  }
  return std::pow(alpha, h);
}

double exit_time_expectation(const BirthDeathChain& chain, int h) {
  return exit_time_expectation(chain, h, 0, chain.top());
}

double exit_time_expectation(const BirthDeathChain& chain, int h, int low, int high) {
  check_interval(chain, h, low, high);
  if (h == low || h == high) return 0.0;
  // Every interior state must be able to leave, otherwise the system is singular.
  // Two sweeps: exits_low[k] holds when k walks down to low with positive rates.
  const auto width = static_cast<std::size_t>(high - low);
  std::vector<bool> exits_low(width + 1, false);
  exits_low[0] = true;
  for (int k = low + 1; k < high; ++k) {
    const auto j = static_cast<std::size_t>(k - low);
    exits_low[j] = exits_low[j - 1] && rate(chain.down, k) > 0.0;
  }
  bool exits_high = true;
  for (int k = high - 1; k > low; --k) {
    exits_high = exits_high && rate(chain.up, k) > 0.0;
    if (!exits_high && !exits_low[static_cast<std::size_t>(k - low)]) {
      throw NotAbsorbing("state " + std::to_string(k) + " never leaves [" + std::to_string(low) + ", " +
                         std::to_string(high) + "]");
    }
  }
  InteriorSystem s = interior_system(chain, low, high);
  const std::vector<double> rhs(s.diag.size(), 1.0);
  const auto m = solve_tridiagonal(s.lower, s.diag, s.upper, rhs);
  return m[static_cast<std::size_t>(h - low - 1)];
}

std::vector<double> hit_cdf_1d(const BirthDeathChain& chain, const std::vector<bool>& targets, int start,
                               std::uint64_t t_max) {
  chain.validate();
  const std::size_t m = chain.size();
  if (targets.size() != m) throw InvalidArgument("hit_cdf_1d: target mask has wrong length");
  if (start < 0 || start > chain.top()) throw InvalidArgument("hit_cdf_1d: start outside the chain");
  std::vector<double> cdf(t_max + 1, 0.0);
  if (targets[static_cast<std::size_t>(start)]) {
    std::fill(cdf.begin(), cdf.end(), 1.0);
    return cdf;
  }
  std::vector<double> cur(m, 0.0);
  std::vector<double> next(m);
  cur[static_cast<std::size_t>(start)] = 1.0;
  double absorbed = 0.0;
  for (std::uint64_t t = 1; t <= t_max; ++t) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      const double w = cur[k];
      if (w == 0.0) continue;
      const double p = chain.up[k];
      const double q = chain.down[k];
      if (k + 1 < m) next[k + 1] += w * p;
      if (k > 0) next[k - 1] += w * q;
      next[k] += w * chain.hold(static_cast<int>(k));
    }
    for (std::size_t k = 0; k < m; ++k) {
      if (targets[k]) {
        absorbed += next[k];
        next[k] = 0.0;
      }
    }
    cur.swap(next);
    cdf[t] = std::min(absorbed, 1.0);
  }
  return cdf;
}

}  // namespace logitmeta
