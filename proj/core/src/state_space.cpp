#include "logitmeta/state_space.hpp"

#include <bit>
#include <string>

#include "logitmeta/error.hpp"

namespace logitmeta {

StateSpace::StateSpace(const GameSpec& game, std::size_t cap) : game_(game), size_(0) {
  const int n = game.players();
  if (n >= 63 || (std::size_t{1} << n) > cap) {
    throw CapacityExceeded("state space of " + std::to_string(n) + " players exceeds cap of " +
                           std::to_string(cap) + " states");
  }
  size_ = std::size_t{1} << n;
}

StateIndex StateSpace::encode(const StrategyProfile& profile) const {
  validate_profile(game_, profile);
  StateIndex index = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    index |= static_cast<StateIndex>(game_.bit_of_strategy(profile[i])) << i;
  }
  return index;
}

StrategyProfile StateSpace::decode(StateIndex index) const {
  if (index >= size_) throw InvalidArgument("state index " + std::to_string(index) + " out of range");
  const auto n = static_cast<std::size_t>(game_.players());
  std::vector<int> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = game_.strategy_of_bit(static_cast<int>((index >> i) & 1U));
  return StrategyProfile(std::move(s));
}

int StateSpace::weight(StateIndex index) { return std::popcount(index); }

}  // namespace logitmeta
