#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "logitmeta/distribution.hpp"
#include "logitmeta/game.hpp"
#include "logitmeta/logit_kernel.hpp"
#include "logitmeta/state_space.hpp"
#include "logitmeta/stochastic_matrix.hpp"
#include "logitmeta/subsets.hpp"

namespace logitmeta {

// Logit choice law of one player: probability[b] of playing strategy[b].
struct UpdateLaw {
  std::array<int, 2> strategy;
  std::array<double, 2> probability;

  double probability_of(int s) const { return s == strategy[0] ? probability[0] : probability[1]; }
};

// sigma_i(y | x) proportional to exp(beta * u_i(x_-i, y)), normalised with a
// max shift so large beta saturates to the exact best-response law.
UpdateLaw update_distribution(const GameSpec& game, const StrategyProfile& profile, int player);

StochasticMatrix build_transition_matrix(const GameSpec& game, std::size_t cap = StateSpace::kDenseCap);

// pi(x) = exp(beta * potential(x)) / Z, normalised by log-sum-exp.
Distribution gibbs_distribution(const GameSpec& game, std::size_t cap = StateSpace::kDefaultCap);

// Stationary vector of an irreducible dense chain via a direct solve.
Distribution stationary_distribution(const StochasticMatrix& p);

// mu P^steps
Distribution evolve(const Distribution& mu, const TransitionOperator& p, std::uint64_t steps);

// Q(S, S^c) / pi(S)
double bottleneck_ratio(const TransitionOperator& p, const Distribution& pi, const StateSet& s);

// pi conditioned on S.
Distribution restricted_distribution(const Distribution& pi, const StateSet& s);

// Probability of reaching `a` before `b` from `start`.
double absorbing_hit_probability(const TransitionOperator& p, const StateSet& a, const StateSet& b,
                                 std::size_t start);

// cdf[t] = Prob_start(tau_targets <= t) for t = 0..t_max.
std::vector<double> hitting_time_cdf(const TransitionOperator& p, const StateSet& targets,
                                     std::size_t start, std::uint64_t t_max);

// E_start[tau_targets]
double expected_absorption_time(const TransitionOperator& p, const StateSet& targets, std::size_t start);

// Largest transient set the absorbing solvers will factor densely.
inline constexpr std::size_t kMaxTransientStates = std::size_t{1} << 13;

}  // namespace logitmeta
