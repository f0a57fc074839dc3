#include "logitmeta/logit_kernel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "logitmeta/error.hpp"

namespace logitmeta {

namespace {

int bit(std::uint64_t state, int i) { return static_cast<int>((state >> i) & 1U); }

// u_i(x) for the profile encoded by `state`, read straight from the bits.
double utility_of_state(const GameSpec& game, std::uint64_t state, int i) {
  const int n = game.players();
  switch (game.family()) {
    case Family::Or:
      return state == 0 ? 0.0 : -1.0;
    case Family::Ising: {
      const int total = 2 * std::popcount(static_cast<std::uint64_t>(state)) - n;
      const int s = 2 * bit(state, i) - 1;
      return static_cast<double>(s * (total - s));
    }
    case Family::Ring: {
      const auto& p = game.payoffs();
      const int mine = bit(state, i);
      return p.payoff(mine, bit(state, (i - 1 + n) % n)) + p.payoff(mine, bit(state, (i + 1) % n));
    }
  }
  return 0.0;
}

}  // namespace

double flip_probability(const GameSpec& game, std::uint64_t state, int player) {
  const double gain = utility_of_state(game, state ^ (std::uint64_t{1} << player), player) -
                      utility_of_state(game, state, player);
  return 1.0 / (1.0 + std::exp(-game.beta() * gain));
}

LogitKernel::LogitKernel(const GameSpec& game, std::size_t cap) : space_(game, cap) {
  const auto n = static_cast<std::size_t>(game.players());
  if (space_.size() * n > kTableCap) return;
  flip_.resize(space_.size() * n);
  for (std::size_t x = 0; x < space_.size(); ++x) {
    for (std::size_t i = 0; i < n; ++i) flip_[x * n + i] = logitmeta::flip_probability(game, x, static_cast<int>(i));
  }
}

double LogitKernel::flip_probability(std::size_t state, int player) const {
  if (!flip_.empty()) return flip_[state * static_cast<std::size_t>(players()) + static_cast<std::size_t>(player)];
  return logitmeta::flip_probability(game(), state, player);
}

double LogitKernel::holding_probability(std::size_t state) const {
  const int n = players();
  double stay = 0.0;
  for (int i = 0; i < n; ++i) stay += 1.0 - flip_probability(state, i);
  return stay / n;
}

void LogitKernel::apply(std::span<const double> in, std::span<double> out) const {
  const std::size_t size = space_.size();
  if (in.size() != size || out.size() != size) throw InvalidArgument("apply: dimension mismatch");
  const int n = players();
  const double inv_n = 1.0 / n;
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t x = 0; x < size; ++x) {
    const double w = in[x];
    if (w == 0.0) continue;
    double stay = 0.0;
    for (int i = 0; i < n; ++i) {
      const double f = flip_probability(x, i);
      stay += 1.0 - f;
      out[x ^ (std::size_t{1} << i)] += w * f * inv_n;
    }
    out[x] += w * stay * inv_n;
  }
}

void LogitKernel::for_each_in_row(std::size_t from, const RowVisitor& visit) const {
  const int n = players();
  double stay = 0.0;
  for (int i = 0; i < n; ++i) {
    const double f = flip_probability(from, i);
    stay += 1.0 - f;
    if (f > 0.0) visit(from ^ (std::size_t{1} << i), f / n);
  }
  if (stay > 0.0) visit(from, stay / n);
}

StochasticMatrix LogitKernel::to_dense(std::size_t cap) const {
  const std::size_t size = space_.size();
  if (size > cap) {
    throw CapacityExceeded("dense matrix of " + std::to_string(size) + " states exceeds cap of " +
                           std::to_string(cap));
  }
  std::vector<double> a(size * size, 0.0);
  for (std::size_t x = 0; x < size; ++x) {
    for_each_in_row(x, [&](std::size_t y, double p) { a[x * size + y] += p; });
  }
  return StochasticMatrix(size, std::move(a));
}

}  // namespace logitmeta
