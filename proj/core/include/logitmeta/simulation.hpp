#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "logitmeta/game.hpp"
#include "logitmeta/rng.hpp"

namespace logitmeta {

// Monte Carlo runs work on the bit encoding of profiles (bit i = player i's
// strategy bit), which needs no enumerated state space and allows n <= 64.
inline constexpr int kMaxSimulatedPlayers = 64;

std::uint64_t state_of_profile(const GameSpec& game, const StrategyProfile& profile);
StrategyProfile profile_of_state(const GameSpec& game, std::uint64_t state);

struct SimConfig {
  std::uint64_t steps = 1000;
  std::uint64_t replicas = 1;
  std::uint64_t seed = 0;
  std::uint64_t record_every = 0;  // 0: record only the first and last state
  unsigned threads = 0;            // 0: hardware concurrency

  void validate() const;
};

// Runs fn(r) for r = 0..count-1 on up to `threads` workers. Results must be
// written to per-index slots so the outcome does not depend on scheduling.
void parallel_for(std::uint64_t count, unsigned threads, const std::function<void(std::uint64_t)>& fn);

// One logit step: a uniformly chosen player resamples its strategy.
std::uint64_t step_state(const GameSpec& game, std::uint64_t state, CounterRng& rng);
StrategyProfile step(const GameSpec& game, const StrategyProfile& profile, CounterRng& rng);

using StatePredicate = std::function<bool(std::uint64_t)>;

// Named predicate (see make_predicate) evaluated on the bit encoding.
StatePredicate state_predicate(const GameSpec& game, std::string_view spec);

struct HitSample {
  std::uint64_t steps = 0;  // hitting time, or the cap when censored
  bool censored = false;
};

HitSample hitting_time_sample(const GameSpec& game, std::uint64_t start, const StatePredicate& targets,
                              std::uint64_t cap, CounterRng& rng);

// config.replicas samples capped at config.steps; replica r draws from
// replica_rng(config.seed, r).
std::vector<HitSample> sample_hitting_times(const GameSpec& game, std::uint64_t start,
                                            const StatePredicate& targets, const SimConfig& config);

struct Snapshot {
  std::uint64_t replica;
  std::uint64_t t;
  std::uint64_t state;
};

std::vector<Snapshot> simulate_trajectories(const GameSpec& game, std::uint64_t start, const SimConfig& config);

// Two copies of the chain driven by shared randomness.
struct CoupledPair {
  std::uint64_t x = 0;
  std::uint64_t y = 0;

  bool coalesced() const { return x == y; }
};

// x precedes y when every player on strategy 1 in y is also on 1 in x
// (x_i >= y_i for all i); all-zeros is the top element.
bool precedes(std::uint64_t x, std::uint64_t y);

// Same player in both copies and one shared uniform U: each copy plays 0 iff
// U < sigma_i(0 | copy). This matches the two update laws as closely as
// possible, so each marginal is an exact logit chain.
CoupledPair coupled_step(const GameSpec& game, CoupledPair pair, CounterRng& rng);

// coupled_step restricted to ring games, where it preserves precedes().
CoupledPair monotone_coupled_step(const GameSpec& game, CoupledPair pair, CounterRng& rng);

// Independent steps until the copies meet, identical steps afterwards.
CoupledPair glued_step(const GameSpec& game, CoupledPair pair, CounterRng& rng);

// Events of the OR-game coupling run from (x, y): the coalescence time, the
// first time the x copy sits at all-zeros, and the first time every player
// has been selected at least once.
struct OrCouplingTrace {
  std::uint64_t coupled_at = 0;
  std::uint64_t first_zero = 0;
  std::uint64_t all_selected = 0;
  bool censored = false;
};

OrCouplingTrace trace_or_coupling(const GameSpec& game, CoupledPair start, std::uint64_t cap, CounterRng& rng);

struct TvBoundEstimate {
  double bound = 0.0;        // point estimate, clamped to [0, 1]
  double half_width = 0.0;   // 95% Hoeffding half-width of `bound`
  double upper = 0.0;        // min(1, bound + half_width)
  std::uint64_t worst_start = 0;
  bool monotone = false;     // ring path (hitting all-zeros) vs glued pairs
};

// Upper estimate of max_{x,y in S} ||P^t(x,.) - P^t(y,.)||. Ring games use
// 2 * max_{z in S} Prob_z(tau_0 > t) via the monotone coupling, simulating only
// the precedes-minimal starts; other families use glued pairs over all of S.
TvBoundEstimate empirical_tv_bound(const GameSpec& game, const std::vector<std::uint64_t>& starts, std::uint64_t t,
                                   const SimConfig& config);

}  // namespace logitmeta
