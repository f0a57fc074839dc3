#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "logitmeta/game.hpp"
#include "logitmeta/state_space.hpp"
#include "logitmeta/stochastic_matrix.hpp"

namespace logitmeta {

// Probability that `player`, once selected in the profile encoded by `state`,
// switches strategy. Works directly on the bit encoding, so it needs no state
// space and accepts any n <= 64.
double flip_probability(const GameSpec& game, std::uint64_t state, int player);

// Matrix-free logit transition operator. Each row has at most n+1 nonzeros:
// P(x, x with bit i flipped) = flip(x, i) / n and the remainder on x.
// Flip probabilities are tabulated when the table holds at most kTableCap
// entries and recomputed on demand otherwise.
class LogitKernel final : public TransitionOperator {
 public:
  static constexpr std::size_t kTableCap = std::size_t{1} << 23;

  explicit LogitKernel(const GameSpec& game, std::size_t cap = StateSpace::kDefaultCap);

  const GameSpec& game() const { return space_.game(); }
  const StateSpace& space() const { return space_; }
  int players() const { return space_.players(); }

  std::size_t size() const override { return space_.size(); }
  void apply(std::span<const double> in, std::span<double> out) const override;
  void for_each_in_row(std::size_t from, const RowVisitor& visit) const override;

  // Probability that `player`, once selected at `state`, switches strategy.
  double flip_probability(std::size_t state, int player) const;
  double holding_probability(std::size_t state) const;

  StochasticMatrix to_dense(std::size_t cap = StateSpace::kDenseCap) const;

 private:
  StateSpace space_;
  std::vector<double> flip_;  // state-major, empty when not tabulated
};

}  // namespace logitmeta
