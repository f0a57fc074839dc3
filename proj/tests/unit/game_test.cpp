#include <gtest/gtest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "logitmeta/error.hpp"
#include "logitmeta/game.hpp"
#include "logitmeta/state_space.hpp"
#include "oracle.hpp"

namespace {

using logitmeta::GameSpec;
using logitmeta::RingPayoffs;
using logitmeta::StrategyProfile;

StrategyProfile profile(std::vector<int> s) { return StrategyProfile(std::move(s)); }

const RingPayoffs kDominant{2.0, 1.0, 0.0, 0.0};
const RingPayoffs kEqual{1.0, 1.0, 0.0, 0.0};

TEST(Utility, DocumentedValues) {
  EXPECT_EQ(utility(GameSpec::or_game(3, 1.0), profile({0, 0, 0}), 0), 0.0);
  EXPECT_EQ(utility(GameSpec::or_game(3, 1.0), profile({0, 1, 0}), 0), -1.0);
  EXPECT_EQ(utility(GameSpec::ising(3, 1.0), profile({1, 1, -1}), 0), 0.0);
  const auto ring = GameSpec::ring(3, 1.0, kDominant);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(utility(ring, profile({0, 0, 0}), i), 4.0);
}

TEST(Utility, RejectsBadInput) {
  const auto g = GameSpec::or_game(3, 1.0);
  EXPECT_THROW(utility(g, profile({0, 0, 0}), 3), logitmeta::InvalidArgument);
  EXPECT_THROW(utility(g, profile({0, 0}), 0), logitmeta::InvalidArgument);
  EXPECT_THROW(utility(g, profile({0, 2, 0}), 0), logitmeta::InvalidArgument);
  EXPECT_THROW(utility(GameSpec::ising(3, 1.0), profile({0, 1, 1}), 0), logitmeta::InvalidArgument);
}

TEST(GameSpec, Validation) {
  EXPECT_THROW(GameSpec::or_game(0, 1.0), logitmeta::InvalidArgument);
  EXPECT_THROW(GameSpec::ising(3, -1.0), logitmeta::InvalidArgument);
  EXPECT_THROW(GameSpec::ring(3, 1.0, RingPayoffs{0.0, 1.0, 0.0, 1.0}), logitmeta::InvalidArgument);
  EXPECT_THROW(GameSpec::ring(3, 1.0, RingPayoffs{1.0, 2.0, 0.0, 0.0}), logitmeta::InvalidArgument);
  EXPECT_NO_THROW(GameSpec::ring(1, 1.0, kDominant));
  EXPECT_NO_THROW(GameSpec::ring(2, 1.0, kDominant));
}

TEST(GameSpec, JsonRoundTrip) {
  const auto g = GameSpec::ring(5, 1.5, RingPayoffs{3.0, 2.0, 0.5, 0.25});
  const auto back = GameSpec::from_json(g.to_json());
  EXPECT_EQ(back.family(), g.family());
  EXPECT_EQ(back.players(), 5);
  EXPECT_EQ(back.beta(), 1.5);
  EXPECT_EQ(back.payoffs().zero_gain(), 2.75);
  EXPECT_EQ(back.payoffs().one_gain(), 1.5);
  const auto ising = GameSpec::from_json(nlohmann::json{{"family", "ising"}, {"n", 4}, {"beta", 0.5}});
  EXPECT_EQ(ising.family(), logitmeta::Family::Ising);
  EXPECT_THROW(GameSpec::from_json(nlohmann::json{{"family", "potts"}, {"n", 4}, {"beta", 0.5}}),
               logitmeta::InvalidArgument);
}

TEST(Potential, DocumentedValues) {
  EXPECT_EQ(potential(GameSpec::ising(4, 1.0), profile({1, 1, 1, 1})), 6.0);
  EXPECT_EQ(potential(GameSpec::ring(3, 1.0, kDominant), profile({0, 0, 0})), 6.0);
  EXPECT_EQ(potential(GameSpec::ring(4, 1.0, kEqual), profile({0, 0, 1, 1})), 2.0);
  EXPECT_EQ(potential(GameSpec::or_game(4, 1.0), profile({0, 0, 0, 0})), 0.0);
  EXPECT_EQ(potential(GameSpec::or_game(4, 1.0), profile({0, 0, 1, 0})), -1.0);
}

TEST(ProfileStats, DocumentedValues) {
  const auto ring = GameSpec::ring(4, 1.0, kEqual);
  const auto a = profile_stats(ring, profile({0, 0, 1, 1}));
  EXPECT_EQ(a.level, 1);
  EXPECT_EQ(a.size_one_zero_blocks, 0);
  EXPECT_EQ(a.size_one_one_blocks, 0);
  const auto b = profile_stats(ring, profile({0, 1, 0, 1}));
  EXPECT_EQ(b.level, 2);
  EXPECT_EQ(b.size_one_zero_blocks, 2);
  EXPECT_EQ(b.size_one_one_blocks, 2);
  const auto m = profile_stats(GameSpec::ising(5, 1.0), profile({1, 1, 1, -1, -1}));
  EXPECT_EQ(m.magnetization, 1);
  EXPECT_EQ(m.zeros, 2);
  EXPECT_EQ(m.ones, 3);
  EXPECT_FALSE(m.level.has_value());
  EXPECT_FALSE(a.magnetization.has_value());
  EXPECT_EQ(profile_stats(ring, profile({0, 0, 0, 0})).level, 0);
  EXPECT_EQ(profile_stats(ring, profile({1, 1, 1, 1})).level, 0);
}

TEST(Deviation, DocumentedValues) {
  const auto d1 = potential_difference_check(GameSpec::ising(3, 1.0), profile({1, 1, 1}), 0, -1);
  EXPECT_EQ(d1.utility_change, -4.0);
  EXPECT_EQ(d1.potential_change, -4.0);
  const auto d2 = potential_difference_check(GameSpec::or_game(2, 1.0), profile({0, 0}), 0, 1);
  EXPECT_EQ(d2.utility_change, -1.0);
  EXPECT_EQ(d2.potential_change, -1.0);
  const auto d3 = potential_difference_check(GameSpec::ring(3, 1.0, kDominant), profile({0, 0, 0}), 1, 1);
  EXPECT_EQ(d3.utility_change, -4.0);
  EXPECT_EQ(d3.potential_change, -4.0);
}

std::vector<GameSpec> families(int n) {
  return {GameSpec::or_game(n, 1.0), GameSpec::ising(n, 1.0), GameSpec::ring(n, 1.0, kDominant),
          GameSpec::ring(n, 1.0, kEqual), GameSpec::ring(n, 1.0, RingPayoffs{3.0, 1.5, 0.5, -0.25})};
}

TEST(Potential, ExactPotentialExhaustive) {
  for (int n = 1; n <= 8; ++n) {
    for (const auto& g : families(n)) {
      const logitmeta::StateSpace space(g);
      for (std::size_t x = 0; x < space.size(); ++x) {
        const auto p = space.decode(x);
        for (int i = 0; i < n; ++i) {
          for (int s : g.alphabet()) {
            const auto d = potential_difference_check(g, p, i, s);
            ASSERT_NEAR(d.utility_change, d.potential_change, 1e-12) << to_string(g.family()) << " n=" << n;
          }
        }
      }
    }
  }
}

TEST(Potential, AgreesWithPathIntegral) {
  for (int n = 1; n <= 8; ++n) {
    for (const auto& g : families(n)) {
      const logitmeta::StateSpace space(g);
      const double base = potential(g, space.decode(0));
      for (std::size_t x = 0; x < space.size(); ++x) {
        ASSERT_NEAR(potential(g, space.decode(x)) - base, oracle::potential_from_zero(g, x), 1e-12);
      }
    }
  }
}

TEST(Utility, AgreesWithOracle) {
  for (int n = 1; n <= 7; ++n) {
    for (const auto& g : families(n)) {
      const logitmeta::StateSpace space(g);
      for (std::size_t x = 0; x < space.size(); ++x) {
        for (int i = 0; i < n; ++i) ASSERT_EQ(utility(g, space.decode(x), i), oracle::utility(g, x, i));
      }
    }
  }
}

TEST(Potential, IsingDependsOnlyOnMagnetization) {
  for (int n = 1; n <= 10; ++n) {
    const auto g = GameSpec::ising(n, 1.0);
    const logitmeta::StateSpace space(g);
    for (std::size_t x = 0; x < space.size(); ++x) {
      const auto p = space.decode(x);
      const int s = *profile_stats(g, p).magnetization;
      ASSERT_EQ(potential(g, p), 0.5 * (s * s - n));
    }
  }
}

TEST(Potential, RingLevelFormula) {
  for (int n = 3; n <= 12; ++n) {
    const auto g = GameSpec::ring(n, 1.0, RingPayoffs{1.5, 1.5, 0.0, 0.0});
    const logitmeta::StateSpace space(g);
    for (std::size_t x = 0; x < space.size(); ++x) {
      const auto p = space.decode(x);
      ASSERT_NEAR(potential(g, p), (n - 2 * *profile_stats(g, p).level) * 1.5, 1e-12);
    }
  }
}

// Count maximal runs of `value` on the cycle directly.
int blocks(const StrategyProfile& p, int value) {
  const int n = static_cast<int>(p.size());
  int count = 0;
  for (int i = 0; i < n; ++i) {
    if (p[static_cast<std::size_t>(i)] == value && p[static_cast<std::size_t>((i + n - 1) % n)] != value) ++count;
  }
  return count;
}

TEST(ProfileStats, LevelCountsBothBlockKinds) {
  for (int n = 2; n <= 10; ++n) {
    const auto g = GameSpec::ring(n, 1.0, kEqual);
    const logitmeta::StateSpace space(g);
    for (std::size_t x = 1; x + 1 < space.size(); ++x) {
      const auto p = space.decode(x);
      const auto st = profile_stats(g, p);
      ASSERT_EQ(*st.level, blocks(p, 0));
      ASSERT_EQ(*st.level, blocks(p, 1));
      ASSERT_LE(*st.level, n / 2);
      ASSERT_EQ(st.zeros + st.ones, n);
    }
  }
}

TEST(StateSpace, EncodeDecodeRoundTrip) {
  for (const auto& g : {GameSpec::ising(6, 1.0), GameSpec::or_game(6, 1.0)}) {
    const logitmeta::StateSpace space(g);
    ASSERT_EQ(space.size(), 64U);
    for (std::size_t x = 0; x < space.size(); ++x) ASSERT_EQ(space.encode(space.decode(x)), x);
  }
  const logitmeta::StateSpace ising(GameSpec::ising(3, 1.0));
  EXPECT_EQ(ising.decode(0), profile({-1, -1, -1}));
  EXPECT_EQ(ising.encode(profile({1, -1, -1})), 1U);
  EXPECT_EQ(logitmeta::StateSpace::weight(0b1011), 3);
  EXPECT_THROW(logitmeta::StateSpace(GameSpec::or_game(21, 1.0)), logitmeta::CapacityExceeded);
  EXPECT_NO_THROW(logitmeta::StateSpace(GameSpec::or_game(21, 1.0), std::size_t{1} << 21));
}

}  // namespace
