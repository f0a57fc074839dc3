#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <random>

#include "logitmeta/chain.hpp"
#include "logitmeta/error.hpp"
#include "logitmeta/logit_kernel.hpp"
#include "oracle.hpp"

namespace {

using logitmeta::GameSpec;
using logitmeta::RingPayoffs;
using logitmeta::StrategyProfile;

std::vector<GameSpec> zoo(int n, double beta) {
  return {GameSpec::or_game(n, beta), GameSpec::ising(n, beta), GameSpec::ring(n, beta, {2.0, 1.0, 0.0, 0.0}),
          GameSpec::ring(n, beta, {1.0, 1.0, 0.0, 0.0}), GameSpec::ring(n, beta, {3.0, 1.5, 0.5, -0.25})};
}

TEST(UpdateLaw, DocumentedValues) {
  for (double beta : {0.0, 0.3, 2.0, 25.0}) {
    const auto law = update_distribution(GameSpec::or_game(2, beta), StrategyProfile({0, 0}), 0);
    EXPECT_NEAR(law.probability_of(0), 1.0 / (1.0 + std::exp(-beta)), 1e-15);
    EXPECT_NEAR(law.probability_of(1), 1.0 / (1.0 + std::exp(beta)), 1e-15);
  }
  const auto ising = update_distribution(GameSpec::ising(3, 1.0), StrategyProfile({1, 1, -1}), 2);
  EXPECT_NEAR(ising.probability_of(1), 1.0 / (1.0 + std::exp(-4.0)), 1e-15);
  EXPECT_NEAR(ising.probability_of(-1), 1.0 / (1.0 + std::exp(4.0)), 1e-15);
}

TEST(UpdateLaw, ZeroBetaIsUniform) {
  for (const auto& g : zoo(4, 0.0)) {
    const logitmeta::StateSpace space(g);
    for (std::size_t x = 0; x < space.size(); ++x) {
      for (int i = 0; i < 4; ++i) {
        const auto law = update_distribution(g, space.decode(x), i);
        ASSERT_EQ(law.probability[0], 0.5);
        ASSERT_EQ(law.probability[1], 0.5);
      }
    }
  }
}

TEST(UpdateLaw, HugeBetaSaturates) {
  const auto law = update_distribution(GameSpec::ising(5, 1e6), StrategyProfile({1, 1, 1, 1, -1}), 4);
  EXPECT_EQ(law.probability_of(1), 1.0);
  EXPECT_EQ(law.probability_of(-1), 0.0);
  // A tie stays exactly one half however large beta is.
  const auto tie = update_distribution(GameSpec::ising(3, 1e6), StrategyProfile({1, -1, 1}), 2);
  EXPECT_EQ(tie.probability[0], 0.5);
  const auto big = GameSpec::ring(4, 500.0, {2.0, 1.0, 0.0, 0.0});
  const auto m = build_transition_matrix(big);
  EXPECT_LE(m.max_row_sum_error(), 1e-12);
  for (double v : m.entries()) ASSERT_TRUE(std::isfinite(v));
}

TEST(TransitionMatrix, MatchesOracleKernel) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> beta_dist(0.0, 4.0);
  for (int n = 1; n <= 7; ++n) {
    for (int k = 0; k < 3; ++k) {
      for (const auto& g : zoo(n, k == 0 ? 0.0 : beta_dist(rng))) {
        const auto p = build_transition_matrix(g);
        const auto q = oracle::kernel(g);
        for (std::size_t x = 0; x < q.size(); ++x) {
          for (std::size_t y = 0; y < q.size(); ++y) ASSERT_NEAR(p(x, y), q[x][y], 1e-14);
        }
      }
    }
  }
}

TEST(TransitionMatrix, RowStochasticAndLocal) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> beta_dist(0.0, 20.0);
  for (int n = 2; n <= 10; n += 2) {
    for (int k = 0; k < 4; ++k) {
      for (const auto& g : zoo(n, beta_dist(rng))) {
        const auto p = build_transition_matrix(g);
        ASSERT_LE(p.max_row_sum_error(), 1e-12);
        for (std::size_t x = 0; x < p.size(); ++x) {
          for (std::size_t y = 0; y < p.size(); ++y) {
            ASSERT_GE(p(x, y), 0.0);
            if (x != y && std::popcount(x ^ y) != 1) ASSERT_EQ(p(x, y), 0.0);
          }
        }
      }
    }
  }
}

TEST(TransitionMatrix, ZeroBetaIsLazyHypercubeWalk) {
  for (const auto& g : zoo(5, 0.0)) {
    const auto p = build_transition_matrix(g);
    for (std::size_t x = 0; x < p.size(); ++x) {
      for (std::size_t y = 0; y < p.size(); ++y) {
        const double want = x == y ? 0.5 : (std::popcount(x ^ y) == 1 ? 0.1 : 0.0);
        ASSERT_NEAR(p(x, y), want, 1e-15);
      }
    }
  }
}

TEST(TransitionMatrix, CapEnforced) {
  EXPECT_THROW(build_transition_matrix(GameSpec::or_game(12, 1.0), 1024), logitmeta::CapacityExceeded);
}

TEST(LogitKernel, MatrixFreeMatchesDense) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& g : zoo(8, 1.7)) {
    const logitmeta::LogitKernel k(g);
    const auto dense = k.to_dense();
    std::vector<double> mu(k.size());
    double total = 0.0;
    for (double& v : mu) total += v = u(rng);
    for (double& v : mu) v /= total;
    std::vector<double> a(k.size()), b(k.size());
    k.apply(mu, a);
    dense.apply(mu, b);
    for (std::size_t y = 0; y < k.size(); ++y) ASSERT_NEAR(a[y], b[y], 1e-15);
    for (std::size_t x = 0; x < k.size(); ++x) {
      double hold = 0.0;
      k.for_each_in_row(x, [&](std::size_t to, double prob) {
        if (to == x) hold = prob;
        EXPECT_NEAR(prob, dense(x, to), 1e-15);
      });
      ASSERT_NEAR(hold, k.holding_probability(x), 1e-15);
    }
  }
}

TEST(LogitKernel, FlipProbability) {
  const auto g = GameSpec::or_game(3, 2.0);
  const logitmeta::LogitKernel k(g);
  EXPECT_NEAR(k.flip_probability(0, 1), 1.0 / (1.0 + std::exp(2.0)), 1e-15);
  EXPECT_NEAR(logitmeta::flip_probability(g, 0b001, 0), 1.0 / (1.0 + std::exp(-2.0)), 1e-15);
  EXPECT_NEAR(logitmeta::flip_probability(g, 0b011, 0), 0.5, 1e-15);
}

}  // namespace
