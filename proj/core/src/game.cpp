#include "logitmeta/game.hpp"

#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "logitmeta/error.hpp"

namespace logitmeta {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Or:
      return "or";
    case Family::Ising:
      return "ising";
    case Family::Ring:
      return "ring";
  }
  return "?";
}

Family family_from_string(std::string_view name) {
  if (name == "or") return Family::Or;
  if (name == "ising") return Family::Ising;
  if (name == "ring") return Family::Ring;
  throw InvalidArgument("unknown game family '" + std::string(name) + "'");
}

double RingPayoffs::payoff(int mine, int other) const {
  if (mine == 0) return other == 0 ? a : c;
  return other == 0 ? d : b;
}

GameSpec::GameSpec(Family family, int players, double beta, RingPayoffs payoffs)
    : family_(family), players_(players), beta_(beta), payoffs_(payoffs) {
  if (players < 1) throw InvalidArgument("game needs at least one player");
  if (!std::isfinite(beta) || beta < 0.0) throw InvalidArgument("beta must be finite and >= 0");
  if (family == Family::Ring) {
    if (!(payoffs.a > payoffs.d) || !(payoffs.b > payoffs.c)) {
      throw InvalidArgument("ring coordination game requires a > d and b > c");
    }
    if (payoffs.zero_gain() < payoffs.one_gain()) {
      throw InvalidArgument("ring coordination game requires a - d >= b - c");
    }
  }
}

GameSpec GameSpec::or_game(int players, double beta) {
  return GameSpec(Family::Or, players, beta, RingPayoffs{});
}

GameSpec GameSpec::ising(int players, double beta) {
  return GameSpec(Family::Ising, players, beta, RingPayoffs{});
}

GameSpec GameSpec::ring(int players, double beta, RingPayoffs payoffs) {
  return GameSpec(Family::Ring, players, beta, payoffs);
}

GameSpec GameSpec::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("game: expected a JSON object");
  auto require = [&](const char* key) -> const nlohmann::json& {
    if (!j.contains(key)) throw InvalidArgument(std::string("game.") + key + ": missing");
    return j.at(key);
  };
  auto number = [&](const char* key) {
    const auto& v = require(key);
    if (!v.is_number()) throw InvalidArgument(std::string("game.") + key + ": expected a number");
    return v.get<double>();
  };
  const auto& fam = require("family");
  if (!fam.is_string()) throw InvalidArgument("game.family: expected a string");
  const auto& n = require("n");
  if (!n.is_number_integer()) throw InvalidArgument("game.n: expected an integer");
  const Family family = family_from_string(fam.get<std::string>());
  const double beta = number("beta");
  RingPayoffs payoffs;
  if (family == Family::Ring) {
    payoffs = RingPayoffs{number("a"), number("b"), number("c"), number("d")};
  }
  return GameSpec(family, n.get<int>(), beta, payoffs);
}

nlohmann::json GameSpec::to_json() const {
  nlohmann::json j{{"family", std::string(to_string(family_))}, {"n", players_}, {"beta", beta_}};
  if (family_ == Family::Ring) {
    j["a"] = payoffs_.a;
    j["b"] = payoffs_.b;
    j["c"] = payoffs_.c;
    j["d"] = payoffs_.d;
  }
  return j;
}

const RingPayoffs& GameSpec::payoffs() const {
  if (family_ != Family::Ring) throw InvalidArgument("payoffs are defined for ring games only");
  return payoffs_;
}

GameSpec GameSpec::with_beta(double beta) const {
  return GameSpec(family_, players_, beta, payoffs_);
}

std::array<int, 2> GameSpec::alphabet() const {
  if (family_ == Family::Ising) return {-1, +1};
  return {0, 1};
}

int GameSpec::bit_of_strategy(int strategy) const {
  const auto alpha = alphabet();
  if (strategy == alpha[0]) return 0;
  if (strategy == alpha[1]) return 1;
  throw InvalidArgument("strategy " + std::to_string(strategy) + " is not in the " +
                        std::string(to_string(family_)) + " alphabet");
}

void validate_profile(const GameSpec& game, const StrategyProfile& profile) {
  if (profile.size() != static_cast<std::size_t>(game.players())) {
    throw InvalidArgument("profile has " + std::to_string(profile.size()) + " entries, game has " +
                          std::to_string(game.players()) + " players");
  }
  for (int s : profile) game.bit_of_strategy(s);
}

namespace {

void check_player(const GameSpec& game, int player) {
  if (player < 0 || player >= game.players()) {
    throw InvalidArgument("player index " + std::to_string(player) + " out of range");
  }
}

double ring_edge_potential(const RingPayoffs& p, int left, int right) {
  if (left != right) return 0.0;
  return left == 0 ? p.zero_gain() : p.one_gain();
}

double utility_unchecked(const GameSpec& game, const StrategyProfile& x, int i) {
  const auto n = static_cast<int>(x.size());
  switch (game.family()) {
    case Family::Or:
      for (int s : x) {
        if (s != 0) return -1.0;
      }
      return 0.0;
    case Family::Ising: {
      const int total = std::accumulate(x.begin(), x.end(), 0);
      return static_cast<double>(x[i] * (total - x[i]));
    }
    case Family::Ring: {
      const auto& p = game.payoffs();
      const int left = x[static_cast<std::size_t>((i - 1 + n) % n)];
      const int right = x[static_cast<std::size_t>((i + 1) % n)];
      return p.payoff(x[i], left) + p.payoff(x[i], right);
    }
  }
  return 0.0;
}

double potential_unchecked(const GameSpec& game, const StrategyProfile& x) {
  const auto n = static_cast<int>(x.size());
  switch (game.family()) {
    case Family::Or:
      for (int s : x) {
        if (s != 0) return -1.0;
      }
      return 0.0;
    case Family::Ising: {
      const int m = std::accumulate(x.begin(), x.end(), 0);
      return 0.5 * (static_cast<double>(m) * m - n);
    }
    case Family::Ring: {
      // A single player meets itself on both sides; its utility is the potential.
      if (n == 1) return utility_unchecked(game, x, 0);
      const auto& p = game.payoffs();
      double phi = 0.0;
      for (int i = 0; i < n; ++i) {
        phi += ring_edge_potential(p, x[i], x[static_cast<std::size_t>((i + 1) % n)]);
      }
      return phi;
    }
  }
  return 0.0;
}

}  // namespace

double utility(const GameSpec& game, const StrategyProfile& profile, int player) {
  validate_profile(game, profile);
  check_player(game, player);
  return utility_unchecked(game, profile, player);
}

double potential(const GameSpec& game, const StrategyProfile& profile) {
  validate_profile(game, profile);
  return potential_unchecked(game, profile);
}

ProfileStats profile_stats(const GameSpec& game, const StrategyProfile& profile) {
  validate_profile(game, profile);
  ProfileStats stats;
  for (int s : profile) {
    if (game.bit_of_strategy(s) == 0) {
      ++stats.zeros;
    } else {
      ++stats.ones;
    }
  }
  if (game.family() == Family::Ising) stats.magnetization = stats.ones - stats.zeros;
  if (game.family() != Family::Ring) return stats;

  const auto n = profile.size();
  stats.level = 0;
  stats.size_one_zero_blocks = 0;
  stats.size_one_one_blocks = 0;
  if (stats.zeros == 0 || stats.ones == 0) return stats;

  // Start the cyclic scan at a block boundary so no run wraps around.
  std::size_t start = 0;
  while (profile[start] == profile[(start + n - 1) % n]) ++start;
  int zero_blocks = 0;
  std::size_t k = 0;
  while (k < n) {
    const int colour = profile[(start + k) % n];
    std::size_t run = 0;
    while (k < n && profile[(start + k) % n] == colour) {
      ++run;
      ++k;
    }
    if (colour == 0) ++zero_blocks;
    if (run == 1) {
      if (colour == 0) {
        ++*stats.size_one_zero_blocks;
      } else {
        ++*stats.size_one_one_blocks;
      }
    }
  }
  stats.level = zero_blocks;
  return stats;
}

Deviation potential_difference_check(const GameSpec& game, const StrategyProfile& profile,
                                     int player, int new_strategy) {
  validate_profile(game, profile);
  check_player(game, player);
  game.bit_of_strategy(new_strategy);
  const StrategyProfile moved = profile.with(static_cast<std::size_t>(player), new_strategy);
  return Deviation{
      utility_unchecked(game, moved, player) - utility_unchecked(game, profile, player),
      potential_unchecked(game, moved) - potential_unchecked(game, profile)};
}

}  // namespace logitmeta
