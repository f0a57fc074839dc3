#pragma once

#include <cstdint>
#include <vector>

#include "logitmeta/birth_death.hpp"

namespace logitmeta {

struct RuinResult {
  double probability = 0.0;
  // Set when eps = 0 or delta = 0 and the answer is forced rather than computed.
  bool degenerate = false;
};

// Probability of reaching n before 0 from h when every interior state moves up
// with probability eps and down with probability delta:
//   (1 - r^h) / (1 - r^n),  r = delta / eps,
// with the limit h/n when |r - 1| < 1e-12.
RuinResult ruin_probability_constant_rates(int n, int h, double eps, double delta);

// Probability of reaching `high` before `low` from h, by a tridiagonal solve
// on the interior. Self-loop mass does not enter the system. Throws
// NotAbsorbing when h can reach neither endpoint.
double ruin_probability(const BirthDeathChain& chain, int h);
double ruin_probability(const BirthDeathChain& chain, int h, int low, int high);

// alpha^h, a certified upper bound on the probability of reaching 0 before
// the top from h. Requires alpha < 1 and q_k / p_k <= alpha at every interior
// k; the error message names the worst k otherwise.
double ruin_bound_geometric(const BirthDeathChain& chain, int h, double alpha);

// E_h[time to reach low or high].
double exit_time_expectation(const BirthDeathChain& chain, int h);
double exit_time_expectation(const BirthDeathChain& chain, int h, int low, int high);

// cdf[t] = Prob_start(tau_targets <= t), O(n) per step.
std::vector<double> hit_cdf_1d(const BirthDeathChain& chain, const std::vector<bool>& targets, int start,
                               std::uint64_t t_max);

}  // namespace logitmeta
