#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "logitmeta/bd_analysis.hpp"
#include "logitmeta/birth_death.hpp"
#include "logitmeta/chain.hpp"
#include "logitmeta/error.hpp"
#include "oracle.hpp"

namespace {

using logitmeta::BirthDeathChain;

BirthDeathChain constant_chain(int n, double eps, double delta) {
  BirthDeathChain c;
  c.up.assign(static_cast<std::size_t>(n) + 1, eps);
  c.down.assign(static_cast<std::size_t>(n) + 1, delta);
  c.up[0] = c.up[static_cast<std::size_t>(n)] = 0.0;
  c.down[0] = c.down[static_cast<std::size_t>(n)] = 0.0;
  c.absorbing_low = c.absorbing_high = true;
  return c;
}

TEST(Ruin, DocumentedValues) {
  EXPECT_NEAR(logitmeta::ruin_probability_constant_rates(10, 3, 0.2, 0.2).probability, 0.3, 1e-15);
  EXPECT_NEAR(logitmeta::ruin_probability_constant_rates(4, 2, 0.5, 0.25).probability, 0.8, 1e-15);
  EXPECT_EQ(logitmeta::ruin_probability_constant_rates(4, 0, 0.5, 0.25).probability, 0.0);
  EXPECT_EQ(logitmeta::ruin_probability_constant_rates(4, 4, 0.5, 0.25).probability, 1.0);
  EXPECT_NEAR(logitmeta::ruin_probability_constant_rates(4, 2, 0.5, 0.25).probability,
              oracle::ruin_by_evolution(4, 2, 0.5, 0.25), 1e-12);
}

TEST(Ruin, DegenerateRates) {
  const auto up_only = logitmeta::ruin_probability_constant_rates(5, 2, 0.3, 0.0);
  EXPECT_TRUE(up_only.degenerate);
  EXPECT_EQ(up_only.probability, 1.0);
  const auto down_only = logitmeta::ruin_probability_constant_rates(5, 2, 0.0, 0.3);
  EXPECT_TRUE(down_only.degenerate);
  EXPECT_EQ(down_only.probability, 0.0);
  EXPECT_EQ(logitmeta::ruin_probability_constant_rates(5, 5, 0.0, 0.3).probability, 1.0);
  EXPECT_THROW(logitmeta::ruin_probability_constant_rates(5, 6, 0.3, 0.3), logitmeta::InvalidArgument);
  EXPECT_THROW(logitmeta::ruin_probability_constant_rates(5, 2, 0.7, 0.6), logitmeta::InvalidArgument);
}

TEST(Ruin, ClosedFormMatchesSolve) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.01, 0.5);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 199);
    const int h = static_cast<int>(rng() % static_cast<std::uint64_t>(n + 1));
    const double eps = u(rng);
    const double delta = trial % 5 == 0 ? eps : u(rng);
    const double closed = logitmeta::ruin_probability_constant_rates(n, h, eps, delta).probability;
    ASSERT_NEAR(closed, logitmeta::ruin_probability(constant_chain(n, eps, delta), h), 1e-10)
        << n << " " << h << " " << eps << " " << delta;
  }
}

TEST(Ruin, MatchesMatrixAbsorption) {
  const auto c = logitmeta::magnetization_chain(10, 0.4);
  const auto p = to_matrix(c);
  const logitmeta::StateSet low = logitmeta::StateSet::single(11, 0);
  const logitmeta::StateSet high = logitmeta::StateSet::single(11, 10);
  for (int h = 0; h <= 10; ++h) {
    ASSERT_NEAR(logitmeta::ruin_probability(c, h), absorbing_hit_probability(p, high, low, static_cast<std::size_t>(h)),
                1e-12);
  }
  EXPECT_NEAR(logitmeta::ruin_probability(c, 5, 2, 7),
              absorbing_hit_probability(p, logitmeta::StateSet::single(11, 7), logitmeta::StateSet::single(11, 2), 5),
              1e-12);
}

TEST(Ruin, LazinessInvariantAndMonotone) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.05, 0.5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + trial;
    BirthDeathChain c;
    c.up.resize(static_cast<std::size_t>(n) + 1);
    c.down.resize(static_cast<std::size_t>(n) + 1);
    for (int k = 1; k < n; ++k) {
      c.up[static_cast<std::size_t>(k)] = u(rng);
      c.down[static_cast<std::size_t>(k)] = u(rng);
    }
    c.absorbing_low = c.absorbing_high = true;
    const auto lz = logitmeta::lazy(c);
    double prev = -1.0;
    for (int h = 0; h <= n; ++h) {
      const double r = logitmeta::ruin_probability(c, h);
      ASSERT_NEAR(r, logitmeta::ruin_probability(lz, h), 1e-12);
      ASSERT_GE(r, prev - 1e-15);
      prev = r;
    }
  }
}

TEST(Ruin, NotAbsorbing) {
  BirthDeathChain c;
  c.up = {0.0, 0.0, 0.0, 0.0};
  c.down = {0.0, 0.0, 0.0, 0.0};
  EXPECT_THROW(logitmeta::ruin_probability(c, 1), logitmeta::NotAbsorbing);
  EXPECT_THROW(logitmeta::exit_time_expectation(c, 1), logitmeta::Error);
}

TEST(GeometricBound, Dominates) {
  auto biased = constant_chain(8, 0.4, 0.2);
  EXPECT_EQ(logitmeta::ruin_bound_geometric(biased, 3, 0.5), 0.125);
  EXPECT_EQ(logitmeta::ruin_bound_geometric(biased, 0, 0.5), 1.0);
  EXPECT_LE(1.0 - logitmeta::ruin_probability(biased, 3), 0.125);
  EXPECT_THROW(logitmeta::ruin_bound_geometric(biased, 3, 0.4), logitmeta::InvalidArgument);
  EXPECT_THROW(logitmeta::ruin_bound_geometric(biased, 3, 1.0), logitmeta::InvalidArgument);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.05, 0.45);
  std::uniform_real_distribution<double> ratio(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 60);
    const double alpha = 0.05 + 0.9 * ratio(rng);
    BirthDeathChain c;
    c.up.assign(static_cast<std::size_t>(n) + 1, 0.0);
    c.down.assign(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 1; k < n; ++k) {
      const double p = u(rng);
      c.up[static_cast<std::size_t>(k)] = p;
      c.down[static_cast<std::size_t>(k)] = p * alpha * ratio(rng);
    }
    c.absorbing_low = c.absorbing_high = true;
    const int h = static_cast<int>(rng() % static_cast<std::uint64_t>(n + 1));
    ASSERT_LE(1.0 - logitmeta::ruin_probability(c, h), logitmeta::ruin_bound_geometric(c, h, alpha) + 1e-12);
  }
}

TEST(ExitTime, DocumentedValues) {
  auto walk = constant_chain(4, 0.5, 0.5);
  EXPECT_NEAR(logitmeta::exit_time_expectation(walk, 2), 4.0, 1e-12);
  EXPECT_EQ(logitmeta::exit_time_expectation(walk, 0), 0.0);
  EXPECT_EQ(logitmeta::exit_time_expectation(walk, 4), 0.0);
  for (int n = 2; n <= 20; ++n) {
    for (double beta : {0.5, 1.0, 2.0}) {
      const auto m = logitmeta::magnetization_chain(n, beta);
      // Exit through the last nonpositive magnetization or through n.
      for (int j = n / 2; j <= n; ++j) {
        ASSERT_LE(logitmeta::exit_time_expectation(m, j, n / 2, n), std::pow(n, 3));
      }
    }
  }
}

TEST(ExitTime, MatchesMatrixSolve) {
  const auto c = logitmeta::lazy(logitmeta::ehrenfest(12));
  const auto p = to_matrix(c);
  const logitmeta::StateSet ends(13, {0, 12});
  for (int h = 0; h <= 12; ++h) {
    ASSERT_NEAR(logitmeta::exit_time_expectation(c, h, 0, 12),
                expected_absorption_time(p, ends, static_cast<std::size_t>(h)), 1e-8);
  }
}

TEST(HitCdf1d, MatchesMatrixCdf) {
  const auto c = logitmeta::magnetization_chain(15, 0.3);
  std::vector<bool> targets(16, false);
  targets[0] = targets[15] = true;
  const auto fast = logitmeta::hit_cdf_1d(c, targets, 9, 500);
  const auto slow = hitting_time_cdf(to_matrix(c), logitmeta::StateSet(16, {0, 15}), 9, 500);
  ASSERT_EQ(fast.size(), slow.size());
  for (std::size_t t = 0; t < fast.size(); ++t) ASSERT_NEAR(fast[t], slow[t], 1e-12);
  for (double v : logitmeta::hit_cdf_1d(c, targets, 15, 20)) ASSERT_EQ(v, 1.0);
}

TEST(HitCdf1d, LazySlowdownAndEhrenfestOrdering) {
  for (int n : {32, 64}) {
    const auto e = logitmeta::ehrenfest(n);
    const auto lz = logitmeta::lazy(e);
    std::vector<bool> zero(static_cast<std::size_t>(n) + 1, false);
    zero[0] = true;
    const auto a = logitmeta::hit_cdf_1d(e, zero, n / 2, 20 * n);
    const auto b = logitmeta::hit_cdf_1d(lz, zero, n / 2, 20 * n);
    for (std::size_t t = 0; t < a.size(); ++t) ASSERT_LE(b[t], a[t] + 1e-15);
  }
  const int n = 64;
  const auto e = logitmeta::ehrenfest(n);
  std::vector<bool> zero(n + 1, false);
  zero[0] = true;
  const auto t = static_cast<std::uint64_t>(std::ceil(n * std::log(n) + 2.0 * n));
  const double c1 = logitmeta::hit_cdf_1d(e, zero, 1, t).back();
  const double c2 = logitmeta::hit_cdf_1d(e, zero, 2, t).back();
  const double c3 = logitmeta::hit_cdf_1d(e, zero, 3, t).back();
  EXPECT_GT(c1, c2);
  EXPECT_GT(c2, c3);
  EXPECT_LE(c3, 48.0 * std::exp(2.0) / n);
}

}  // namespace
