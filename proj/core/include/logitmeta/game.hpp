#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace logitmeta {

enum class Family { Or, Ising, Ring };

std::string_view to_string(Family family);
Family family_from_string(std::string_view name);

// Payoffs of the basic 2x2 coordination game played on each ring edge.
// Row strategy 0 against 0 earns a, 1 against 1 earns b, 0 against 1 earns c
// and 1 against 0 earns d.
struct RingPayoffs {
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;
  double d = 0.0;

  double zero_gain() const { return a - d; }  // Delta
  double one_gain() const { return b - c; }   // delta
  double payoff(int mine, int other) const;
};

// A potential game from one of the three supported families together with
// the inverse temperature of its logit dynamics.
class GameSpec {
 public:
  static GameSpec or_game(int players, double beta);
  static GameSpec ising(int players, double beta);
  static GameSpec ring(int players, double beta, RingPayoffs payoffs);

  // {"family": "or"|"ising"|"ring", "n": int, "beta": float, "a".."d"}
  static GameSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  Family family() const { return family_; }
  int players() const { return players_; }
  double beta() const { return beta_; }
  const RingPayoffs& payoffs() const;

  GameSpec with_beta(double beta) const;

  // Strategy alphabet ordered by bit: {0,1} for OR and ring, {-1,+1} for Ising.
  std::array<int, 2> alphabet() const;
  int strategy_of_bit(int bit) const { return alphabet()[bit & 1]; }
  int bit_of_strategy(int strategy) const;

 private:
  GameSpec(Family family, int players, double beta, RingPayoffs payoffs);

  Family family_;
  int players_;
  double beta_;
  RingPayoffs payoffs_;
};

class StrategyProfile {
 public:
  StrategyProfile() = default;
  explicit StrategyProfile(std::vector<int> strategies) : strategies_(std::move(strategies)) {}

  // Profile with every player on the same strategy.
  static StrategyProfile constant(int players, int strategy) {
    return StrategyProfile(std::vector<int>(static_cast<std::size_t>(players), strategy));
  }

  std::size_t size() const { return strategies_.size(); }
  int operator[](std::size_t i) const { return strategies_[i]; }
  void set(std::size_t i, int strategy) { strategies_[i] = strategy; }
  StrategyProfile with(std::size_t i, int strategy) const {
    StrategyProfile copy = *this;
    copy.strategies_[i] = strategy;
    return copy;
  }

  const std::vector<int>& strategies() const { return strategies_; }
  auto begin() const { return strategies_.begin(); }
  auto end() const { return strategies_.end(); }

  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;

 private:
  std::vector<int> strategies_;
};

// Throws InvalidArgument unless the profile has n entries from the alphabet.
void validate_profile(const GameSpec& game, const StrategyProfile& profile);

double utility(const GameSpec& game, const StrategyProfile& profile, int player);

// Exact potential: u_i(x) - u_i(y) = potential(x) - potential(y) whenever x
// and y differ only at player i.
double potential(const GameSpec& game, const StrategyProfile& profile);

struct ProfileStats {
  int zeros = 0;  // players on alphabet()[0]
  int ones = 0;   // players on alphabet()[1]
  std::optional<int> magnetization;          // Ising only
  std::optional<int> level;                  // ring only
  std::optional<int> size_one_zero_blocks;   // ring only
  std::optional<int> size_one_one_blocks;    // ring only
};

ProfileStats profile_stats(const GameSpec& game, const StrategyProfile& profile);

struct Deviation {
  double utility_change;
  double potential_change;
};

// Utility and potential change when `player` switches to `new_strategy`.
Deviation potential_difference_check(const GameSpec& game, const StrategyProfile& profile,
                                     int player, int new_strategy);

}  // namespace logitmeta
