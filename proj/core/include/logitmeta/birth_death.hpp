#pragma once

#include <cstddef>
#include <vector>

#include "logitmeta/state_space.hpp"
#include "logitmeta/stochastic_matrix.hpp"

namespace logitmeta {

// Birth-and-death chain on {0, ..., top}: from k it moves to k+1 with
// probability up[k], to k-1 with probability down[k] and stays otherwise.
// State k is displayed as label_offset + label_scale * k.
struct BirthDeathChain {
  std::vector<double> up;
  std::vector<double> down;
  bool absorbing_low = false;
  bool absorbing_high = false;
  double label_offset = 0.0;
  double label_scale = 1.0;

  int top() const { return static_cast<int>(up.size()) - 1; }
  std::size_t size() const { return up.size(); }
  double hold(int k) const;
  double label(int k) const { return label_offset + label_scale * k; }
  // Index of the state displayed as `value`; throws when there is none.
  int index_of_label(double value) const;

  // Throws InvalidArgument unless rates are nonnegative, p_k + q_k <= 1,
  // down[0] = up[top] = 0 and absorbing endpoints carry no outgoing rate.
  void validate() const;
};

// p_k = (n-k)/n, q_k = k/n
BirthDeathChain ehrenfest(int n);

// (P + I) / 2: every off-diagonal rate halved.
BirthDeathChain lazy(const BirthDeathChain& chain);

// Hamming-weight projection of the OR-game logit chain.
BirthDeathChain or_projection(int n, double beta);

// Magnetization projection of the Ising logit chain; index j has label 2j - n.
BirthDeathChain magnetization_chain(int n, double beta);

StochasticMatrix to_matrix(const BirthDeathChain& chain);

// 1 / (1 + e^{-z}) without overflow.
double logistic(double z);

struct LumpReport {
  StochasticMatrix lumped;  // block-to-block rates read from each block's first state
  double max_deviation = 0.0;
};

// block_of_state[x] in {0, ..., B-1}; every block must be nonempty.
// max_deviation = max over blocks B, B' and x in B of
// |P(x, B') - P(first(B), B')|.
LumpReport lumpability_check(const TransitionOperator& p, const std::vector<std::size_t>& block_of_state);

// Block = number of players on the second strategy (Hamming weight, or
// magnetization index for Ising).
std::vector<std::size_t> weight_partition(const StateSpace& space);

// Block = number of players on the first strategy.
std::vector<std::size_t> zeros_partition(const StateSpace& space);

}  // namespace logitmeta
