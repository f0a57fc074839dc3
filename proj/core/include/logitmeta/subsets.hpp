#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "logitmeta/game.hpp"
#include "logitmeta/state_space.hpp"

namespace logitmeta {

// A subset of {0, ..., universe-1} with O(1) membership.
class StateSet {
 public:
  StateSet() = default;
  StateSet(std::size_t universe, std::vector<std::size_t> members);
  static StateSet from_mask(std::vector<bool> mask);
  static StateSet all(std::size_t universe);
  static StateSet single(std::size_t universe, std::size_t state) { return StateSet(universe, {state}); }

  std::size_t universe() const { return mask_.size(); }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(std::size_t state) const { return state < mask_.size() && mask_[state]; }
  const std::vector<std::size_t>& members() const { return members_; }

  StateSet complement() const;
  StateSet united(const StateSet& other) const;
  bool intersects(const StateSet& other) const;

 private:
  std::vector<bool> mask_;
  std::vector<std::size_t> members_;
};

using ProfilePredicate = std::function<bool(const StrategyProfile&)>;

// Named profile predicates:
//   all, all-zeros, all-ones,
//   weight>=k, weight<=k, weight==k   (players on the second strategy)
//   zeros>=d, zeros<=d, zeros==d      (players on the first strategy)
//   magnetization>=k, magnetization<=k, magnetization==k
//   R                                  (two ring-adjacent players on 0)
//   Rstar>=d                           (R, or at least d zeros)
// A leading '!' negates the predicate.
ProfilePredicate make_predicate(const GameSpec& game, std::string_view spec);

// Named predicate evaluated over the whole space, or an explicit index list
// written as "index:3,5,9".
StateSet named_subset(const StateSpace& space, std::string_view spec);

}  // namespace logitmeta
