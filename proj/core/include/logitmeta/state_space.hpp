#pragma once

#include <cstddef>
#include <cstdint>

#include "logitmeta/game.hpp"

namespace logitmeta {

using StateIndex = std::uint64_t;

// Enumeration of all strategy profiles of a binary-alphabet game. Bit i of
// the index is player i's strategy bit, so Ising spin s is stored as (s+1)/2.
class StateSpace {
 public:
  static constexpr std::size_t kDefaultCap = std::size_t{1} << 20;
  static constexpr std::size_t kDenseCap = std::size_t{1} << 16;

  explicit StateSpace(const GameSpec& game, std::size_t cap = kDefaultCap);

  std::size_t size() const { return size_; }
  int players() const { return game_.players(); }
  const GameSpec& game() const { return game_; }

  StateIndex encode(const StrategyProfile& profile) const;
  StrategyProfile decode(StateIndex index) const;

  // Number of players whose strategy bit is 1.
  static int weight(StateIndex index);

  StateIndex all_zeros() const { return 0; }
  StateIndex all_ones() const { return size_ - 1; }

 private:
  GameSpec game_;
  std::size_t size_;
};

}  // namespace logitmeta
