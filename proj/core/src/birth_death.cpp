#include "logitmeta/birth_death.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "logitmeta/error.hpp"

namespace logitmeta {

namespace {

constexpr double kRateSlack = 1e-12;

void check_top(int n, int minimum) {
  if (n < minimum) throw InvalidArgument("chain needs n >= " + std::to_string(minimum));
}

void check_beta(double beta) {
  if (!std::isfinite(beta) || beta < 0.0) throw InvalidArgument("beta must be finite and >= 0");
}

}  // namespace

double logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double BirthDeathChain::hold(int k) const {
  return std::max(0.0, 1.0 - up[static_cast<std::size_t>(k)] - down[static_cast<std::size_t>(k)]);
}

int BirthDeathChain::index_of_label(double value) const {
  const double k = (value - label_offset) / label_scale;
  const double r = std::round(k);
  if (std::abs(k - r) > 1e-9 || r < 0 || r > top()) {
    throw InvalidArgument("no state with label " + std::to_string(value));
  }
  return static_cast<int>(r);
}

void BirthDeathChain::validate() const {
  if (up.empty() || up.size() != down.size()) throw InvalidArgument("birth-death chain: rate vectors must be nonempty and equal length");
  if (!(label_scale != 0.0) || !std::isfinite(label_scale) || !std::isfinite(label_offset)) {
    throw InvalidArgument("birth-death chain: bad state labels");
  }
  const int n = top();
  for (int k = 0; k <= n; ++k) {
    const double p = up[static_cast<std::size_t>(k)];
    const double q = down[static_cast<std::size_t>(k)];
    if (!std::isfinite(p) || !std::isfinite(q) || p < 0.0 || q < 0.0) {
      throw InvalidArgument("birth-death chain: negative or non-finite rate at k=" + std::to_string(k));
    }
    if (p + q > 1.0 + kRateSlack) {
      throw InvalidArgument("birth-death chain: p+q > 1 at k=" + std::to_string(k));
    }
  }
  if (down.front() != 0.0) throw InvalidArgument("birth-death chain: q_0 must be 0");
  if (up.back() != 0.0) throw InvalidArgument("birth-death chain: p_top must be 0");
  if (absorbing_low && up.front() != 0.0) throw InvalidArgument("birth-death chain: absorbing state 0 has p_0 > 0");
  if (absorbing_high && down.back() != 0.0) {
    throw InvalidArgument("birth-death chain: absorbing top state has q_top > 0");
  }
}

BirthDeathChain ehrenfest(int n) {
  check_top(n, 1);
  BirthDeathChain c;
  c.up.resize(static_cast<std::size_t>(n) + 1);
  c.down.resize(c.up.size());
  for (int k = 0; k <= n; ++k) {
    c.up[static_cast<std::size_t>(k)] = static_cast<double>(n - k) / n;
    c.down[static_cast<std::size_t>(k)] = static_cast<double>(k) / n;
  }
  return c;
}

BirthDeathChain lazy(const BirthDeathChain& chain) {
  chain.validate();
  BirthDeathChain c = chain;
  for (auto& p : c.up) p *= 0.5;
  for (auto& q : c.down) q *= 0.5;
  return c;
}

BirthDeathChain or_projection(int n, double beta) {
  check_top(n, 2);
  check_beta(beta);
  BirthDeathChain c;
  c.up.resize(static_cast<std::size_t>(n) + 1);
  c.down.resize(c.up.size());
  const double two_n = 2.0 * n;
  c.up[0] = logistic(-beta);
  c.up[1] = (n - 1) / two_n;
  c.down[1] = logistic(beta) / n;
  for (int i = 2; i <= n; ++i) {
    c.up[static_cast<std::size_t>(i)] = (n - i) / two_n;
    c.down[static_cast<std::size_t>(i)] = i / two_n;
  }
  return c;
}

BirthDeathChain magnetization_chain(int n, double beta) {
  check_top(n, 2);
  check_beta(beta);
  BirthDeathChain c;
  c.up.resize(static_cast<std::size_t>(n) + 1);
  c.down.resize(c.up.size());
  c.label_offset = -n;
  c.label_scale = 2.0;
  const double two_n = 2.0 * n;
  for (int j = 0; j <= n; ++j) {
    const int k = 2 * j - n;
    c.up[static_cast<std::size_t>(j)] = (n - k) / two_n * logistic(2.0 * (k + 1) * beta);
    c.down[static_cast<std::size_t>(j)] = (n + k) / two_n * logistic(-2.0 * (k - 1) * beta);
  }
  return c;
}

StochasticMatrix to_matrix(const BirthDeathChain& chain) {
  chain.validate();
  const std::size_t m = chain.size();
  std::vector<double> a(m * m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    if (k + 1 < m) a[k * m + k + 1] = chain.up[k];
    if (k > 0) a[k * m + k - 1] = chain.down[k];
    a[k * m + k] = chain.hold(static_cast<int>(k));
  }
  return StochasticMatrix(m, std::move(a));
}

LumpReport lumpability_check(const TransitionOperator& p, const std::vector<std::size_t>& block_of_state) {
  if (block_of_state.size() != p.size()) throw InvalidArgument("lumpability_check: partition does not cover the state space");
  std::size_t blocks = 0;
  for (std::size_t b : block_of_state) blocks = std::max(blocks, b + 1);
  std::vector<std::size_t> first(blocks, p.size());
  for (std::size_t x = 0; x < p.size(); ++x) {
    first[block_of_state[x]] = std::min(first[block_of_state[x]], x);
  }
  for (std::size_t b = 0; b < blocks; ++b) {
    if (first[b] == p.size()) throw InvalidArgument("lumpability_check: block " + std::to_string(b) + " is empty");
  }

  std::vector<double> lumped(blocks * blocks, 0.0);
  for (std::size_t b = 0; b < blocks; ++b) {
    p.for_each_in_row(first[b], [&](std::size_t y, double pxy) { lumped[b * blocks + block_of_state[y]] += pxy; });
  }
  double deviation = 0.0;
  std::vector<double> row(blocks);
  for (std::size_t x = 0; x < p.size(); ++x) {
    std::fill(row.begin(), row.end(), 0.0);
    p.for_each_in_row(x, [&](std::size_t y, double pxy) { row[block_of_state[y]] += pxy; });
    const std::size_t b = block_of_state[x];
    for (std::size_t c = 0; c < blocks; ++c) {
      deviation = std::max(deviation, std::abs(row[c] - lumped[b * blocks + c]));
    }
  }
  return LumpReport{StochasticMatrix(blocks, std::move(lumped)), deviation};
}

std::vector<std::size_t> weight_partition(const StateSpace& space) {
  std::vector<std::size_t> blocks(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) blocks[x] = static_cast<std::size_t>(StateSpace::weight(x));
  return blocks;
}

std::vector<std::size_t> zeros_partition(const StateSpace& space) {
  std::vector<std::size_t> blocks(space.size());
  const auto n = static_cast<std::size_t>(space.players());
  for (std::size_t x = 0; x < space.size(); ++x) blocks[x] = n - static_cast<std::size_t>(StateSpace::weight(x));
  return blocks;
}

}  // namespace logitmeta
