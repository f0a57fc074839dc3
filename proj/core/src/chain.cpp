#include "logitmeta/chain.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "logitmeta/error.hpp"
#include "logitmeta/linalg.hpp"

namespace logitmeta {

UpdateLaw update_distribution(const GameSpec& game, const StrategyProfile& profile, int player) {
  validate_profile(game, profile);
  if (player < 0 || player >= game.players()) throw InvalidArgument("player index out of range");
  const auto alphabet = game.alphabet();
  std::array<double, 2> logit{};
  for (int b = 0; b < 2; ++b) {
    logit[b] = game.beta() * utility(game, profile.with(static_cast<std::size_t>(player), alphabet[b]), player);
  }
  const double top = std::max(logit[0], logit[1]);
  const double w0 = std::exp(logit[0] - top);
  const double w1 = std::exp(logit[1] - top);
  return UpdateLaw{alphabet, {w0 / (w0 + w1), w1 / (w0 + w1)}};
}

StochasticMatrix build_transition_matrix(const GameSpec& game, std::size_t cap) {
  const StateSpace space(game, cap);
  return LogitKernel(game, cap).to_dense(cap);
}

Distribution gibbs_distribution(const GameSpec& game, std::size_t cap) {
  const StateSpace space(game, cap);
  std::vector<double> logw(space.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < space.size(); ++x) {
    logw[x] = game.beta() * potential(game, space.decode(x));
    top = std::max(top, logw[x]);
  }
  double z = 0.0;
  for (double& w : logw) {
    w = std::exp(w - top);
    z += w;
  }
  for (double& w : logw) w /= z;
  return Distribution(std::move(logw));
}

Distribution stationary_distribution(const StochasticMatrix& p) {
  const std::size_t n = p.size();
  if (n == 0) throw InvalidArgument("stationary_distribution: empty matrix");
  // Solve (I - P)^T pi = 0 with the last equation replaced by sum(pi) = 1.
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = (i == j ? 1.0 : 0.0) - p(j, i);
  }
  std::vector<double> b(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = 1.0;
  b[n - 1] = 1.0;
  auto pi = solve_linear(std::move(a), std::move(b));
  for (double& v : pi) v = std::max(v, 0.0);
  return Distribution(std::move(pi));
}

Distribution evolve(const Distribution& mu, const TransitionOperator& p, std::uint64_t steps) {
  if (mu.size() != p.size()) throw InvalidArgument("evolve: dimension mismatch");
  std::vector<double> cur(mu.begin(), mu.end());
  std::vector<double> next(cur.size());
  for (std::uint64_t t = 0; t < steps; ++t) {
    p.apply(cur, next);
    cur.swap(next);
  }
  return Distribution::trusted(std::move(cur));
}

double bottleneck_ratio(const TransitionOperator& p, const Distribution& pi, const StateSet& s) {
  if (pi.size() != p.size() || s.universe() != p.size()) throw InvalidArgument("bottleneck_ratio: dimension mismatch");
  if (s.empty()) throw InvalidArgument("bottleneck_ratio: empty subset");
  const double mass = pi.mass(s);
  if (!(mass > 0.0)) throw InvalidArgument("bottleneck_ratio: subset has zero stationary mass");
  double flow = 0.0;
  for (std::size_t x : s.members()) {
    double out = 0.0;
    p.for_each_in_row(x, [&](std::size_t y, double pxy) {
      if (!s.contains(y)) out += pxy;
    });
    flow += pi[x] * out;
  }
  return flow / mass;
}

Distribution restricted_distribution(const Distribution& pi, const StateSet& s) {
  if (s.universe() != pi.size()) throw InvalidArgument("restricted_distribution: dimension mismatch");
  const double mass = pi.mass(s);
  if (!(mass > 0.0)) throw InvalidArgument("restricted_distribution: subset has zero mass");
  std::vector<double> r(pi.size(), 0.0);
  for (std::size_t x : s.members()) r[x] = pi[x] / mass;
  return Distribution::trusted(std::move(r));
}

namespace {

// Transient states reachable from `start` without entering `targets`, with
// each state's one-step mass into the targets and within the transient set.
struct TransientSystem {
  std::vector<std::size_t> states;
  std::vector<std::size_t> position;  // state -> row, npos when not transient
  std::vector<std::vector<std::pair<std::size_t, double>>> moves;  // within transient set
};

constexpr std::size_t kNpos = std::numeric_limits<std::size_t>::max();

TransientSystem reachable_transient(const TransitionOperator& p, const StateSet& targets, std::size_t start) {
  TransientSystem sys;
  sys.position.assign(p.size(), kNpos);
  std::deque<std::size_t> queue{start};
  sys.position[start] = 0;
  sys.states.push_back(start);
  std::vector<bool> touches_target;
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    p.for_each_in_row(x, [&](std::size_t y, double) {
      if (targets.contains(y) || sys.position[y] != kNpos) return;
      sys.position[y] = sys.states.size();
      sys.states.push_back(y);
      queue.push_back(y);
    });
    if (sys.states.size() > kMaxTransientStates) {
      throw CapacityExceeded("absorbing solve: more than " + std::to_string(kMaxTransientStates) +
                             " transient states");
    }
  }
  // Every transient state must be able to reach the targets.
  const std::size_t m = sys.states.size();
  std::vector<std::vector<std::size_t>> reverse(m);
  std::vector<bool> escapes(m, false);
  sys.moves.resize(m);
  for (std::size_t r = 0; r < m; ++r) {
    p.for_each_in_row(sys.states[r], [&](std::size_t y, double pxy) {
      if (targets.contains(y)) {
        escapes[r] = true;
      } else {
        sys.moves[r].emplace_back(sys.position[y], pxy);
        reverse[sys.position[y]].push_back(r);
      }
    });
  }
  std::deque<std::size_t> frontier;
  for (std::size_t r = 0; r < m; ++r) {
    if (escapes[r]) frontier.push_back(r);
  }
  while (!frontier.empty()) {
    const std::size_t r = frontier.front();
    frontier.pop_front();
    for (std::size_t q : reverse[r]) {
      if (!escapes[q]) {
        escapes[q] = true;
        frontier.push_back(q);
      }
    }
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (!escapes[r]) {
      throw NotAbsorbing("state " + std::to_string(sys.states[r]) + " is reachable from " +
                         std::to_string(start) + " but cannot reach the target set");
    }
  }
  return sys;
}

DenseMatrix identity_minus_transient(const TransientSystem& sys) {
  const std::size_t m = sys.states.size();
  DenseMatrix a(m, m);
  for (std::size_t r = 0; r < m; ++r) {
    a(r, r) += 1.0;
    for (const auto& [c, pxy] : sys.moves[r]) a(r, c) -= pxy;
  }
  return a;
}

void check_start(const TransitionOperator& p, std::size_t start) {
  if (start >= p.size()) throw InvalidArgument("start state " + std::to_string(start) + " out of range");
}

}  // namespace

double absorbing_hit_probability(const TransitionOperator& p, const StateSet& a, const StateSet& b,
                                 std::size_t start) {
  if (a.universe() != p.size() || b.universe() != p.size()) {
    throw InvalidArgument("absorbing_hit_probability: dimension mismatch");
  }
  if (a.empty() || b.empty()) throw InvalidArgument("absorbing_hit_probability: empty target set");
  if (a.intersects(b)) throw InvalidArgument("absorbing_hit_probability: target sets overlap");
  check_start(p, start);
  if (a.contains(start)) return 1.0;
  if (b.contains(start)) return 0.0;

  const StateSet targets = a.united(b);
  const TransientSystem sys = reachable_transient(p, targets, start);
  std::vector<double> rhs(sys.states.size(), 0.0);
  for (std::size_t r = 0; r < sys.states.size(); ++r) {
    p.for_each_in_row(sys.states[r], [&](std::size_t y, double pxy) {
      if (a.contains(y)) rhs[r] += pxy;
    });
  }
  const auto h = solve_linear(identity_minus_transient(sys), std::move(rhs));
  return std::clamp(h[0], 0.0, 1.0);
}

double expected_absorption_time(const TransitionOperator& p, const StateSet& targets, std::size_t start) {
  if (targets.universe() != p.size()) throw InvalidArgument("expected_absorption_time: dimension mismatch");
  if (targets.empty()) throw InvalidArgument("expected_absorption_time: empty target set");
  check_start(p, start);
  if (targets.contains(start)) return 0.0;
  const TransientSystem sys = reachable_transient(p, targets, start);
  const auto m = solve_linear(identity_minus_transient(sys), std::vector<double>(sys.states.size(), 1.0));
  return m[0];
}

std::vector<double> hitting_time_cdf(const TransitionOperator& p, const StateSet& targets,
                                     std::size_t start, std::uint64_t t_max) {
  if (targets.universe() != p.size()) throw InvalidArgument("hitting_time_cdf: dimension mismatch");
  check_start(p, start);
  std::vector<double> cdf(t_max + 1, 0.0);
  if (targets.contains(start)) {
    std::fill(cdf.begin(), cdf.end(), 1.0);
    return cdf;
  }
  std::vector<double> cur(p.size(), 0.0);
  std::vector<double> next(p.size());
  cur[start] = 1.0;
  double absorbed = 0.0;
  for (std::uint64_t t = 1; t <= t_max; ++t) {
    p.apply(cur, next);
    for (std::size_t y : targets.members()) {
      absorbed += next[y];
      next[y] = 0.0;
    }
    cur.swap(next);
    cdf[t] = std::min(absorbed, 1.0);
  }
  return cdf;
}

}  // namespace logitmeta
