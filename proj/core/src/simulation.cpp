#include "logitmeta/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "logitmeta/error.hpp"
#include "logitmeta/logit_kernel.hpp"
#include "logitmeta/subsets.hpp"

namespace logitmeta {

namespace {

void check_simulable(const GameSpec& game) {
  if (game.players() > kMaxSimulatedPlayers) {
    throw CapacityExceeded("simulation supports at most " + std::to_string(kMaxSimulatedPlayers) + " players");
  }
}

void check_state(const GameSpec& game, std::uint64_t state) {
  const int n = game.players();
  if (n < 64 && (state >> n) != 0) throw InvalidArgument("state " + std::to_string(state) + " has bits beyond n");
}

std::uint64_t full_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

// Probability that `player` plays its strategy-0 bit from `state`.
double zero_probability(const GameSpec& game, std::uint64_t state, int player) {
  const double f = flip_probability(game, state, player);
  return ((state >> player) & 1U) ? f : 1.0 - f;
}

std::uint64_t resample(std::uint64_t state, int player, bool zero) {
  const std::uint64_t b = std::uint64_t{1} << player;
  return zero ? (state & ~b) : (state | b);
}

// Hoeffding half-width for a mean of n bounded samples at confidence 95%.
double hoeffding(std::uint64_t n) { return std::sqrt(std::log(2.0 / 0.05) / (2.0 * static_cast<double>(n))); }

}  // namespace

std::uint64_t state_of_profile(const GameSpec& game, const StrategyProfile& profile) {
  check_simulable(game);
  validate_profile(game, profile);
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (game.bit_of_strategy(profile[i]) == 1) s |= std::uint64_t{1} << i;
  }
  return s;
}

StrategyProfile profile_of_state(const GameSpec& game, std::uint64_t state) {
  check_simulable(game);
  check_state(game, state);
  std::vector<int> v(static_cast<std::size_t>(game.players()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = game.strategy_of_bit(static_cast<int>((state >> i) & 1U));
  return StrategyProfile(std::move(v));
}

void SimConfig::validate() const {
  if (replicas < 1) throw InvalidArgument("replicas must be >= 1");
}

void parallel_for(std::uint64_t count, unsigned threads, const std::function<void(std::uint64_t)>& fn) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  const auto workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
  if (workers <= 1) {
    for (std::uint64_t r = 0; r < count; ++r) fn(r);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::uint64_t r = next++; r < count; r = next++) {
        try {
          fn(r);
        } catch (...) {
          const std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::uint64_t step_state(const GameSpec& game, std::uint64_t state, CounterRng& rng) {
  const auto player = static_cast<int>(rng.below(static_cast<std::uint64_t>(game.players())));
  const bool flip = rng.uniform() < flip_probability(game, state, player);
  return flip ? state ^ (std::uint64_t{1} << player) : state;
}

StrategyProfile step(const GameSpec& game, const StrategyProfile& profile, CounterRng& rng) {
  return profile_of_state(game, step_state(game, state_of_profile(game, profile), rng));
}

StatePredicate state_predicate(const GameSpec& game, std::string_view spec) {
  check_simulable(game);
  const std::uint64_t mask = full_mask(game.players());
  if (spec == "all-zeros") return [](std::uint64_t s) { return s == 0; };
  if (spec == "all-ones") return [mask](std::uint64_t s) { return s == mask; };
  if (spec == "all") return [](std::uint64_t) { return true; };
  ProfilePredicate pred = make_predicate(game, spec);
  return [game, pred = std::move(pred)](std::uint64_t s) { return pred(profile_of_state(game, s)); };
}

HitSample hitting_time_sample(const GameSpec& game, std::uint64_t start, const StatePredicate& targets,
                              std::uint64_t cap, CounterRng& rng) {
  check_simulable(game);
  check_state(game, start);
  std::uint64_t s = start;
  for (std::uint64_t t = 0;; ++t) {
    if (targets(s)) return {t, false};
    if (t == cap) return {cap, true};
    s = step_state(game, s, rng);
  }
}

std::vector<HitSample> sample_hitting_times(const GameSpec& game, std::uint64_t start,
                                            const StatePredicate& targets, const SimConfig& config) {
  config.validate();
  check_simulable(game);
  check_state(game, start);
  std::vector<HitSample> out(config.replicas);
  parallel_for(config.replicas, config.threads, [&](std::uint64_t r) {
    CounterRng rng = replica_rng(config.seed, r);
    out[r] = hitting_time_sample(game, start, targets, config.steps, rng);
  });
  return out;
}

std::vector<Snapshot> simulate_trajectories(const GameSpec& game, std::uint64_t start, const SimConfig& config) {
  config.validate();
  check_simulable(game);
  check_state(game, start);
  std::vector<std::vector<Snapshot>> per_replica(config.replicas);
  parallel_for(config.replicas, config.threads, [&](std::uint64_t r) {
    CounterRng rng = replica_rng(config.seed, r);
    auto& snaps = per_replica[r];
    std::uint64_t s = start;
    snaps.push_back({r, 0, s});
    for (std::uint64_t t = 1; t <= config.steps; ++t) {
      s = step_state(game, s, rng);
      if ((config.record_every > 0 && t % config.record_every == 0) || t == config.steps) {
        snaps.push_back({r, t, s});
      }
    }
  });
  std::vector<Snapshot> all;
  for (auto& v : per_replica) all.insert(all.end(), v.begin(), v.end());
  return all;
}

bool precedes(std::uint64_t x, std::uint64_t y) { return (y & ~x) == 0; }

CoupledPair coupled_step(const GameSpec& game, CoupledPair pair, CounterRng& rng) {
  const auto player = static_cast<int>(rng.below(static_cast<std::uint64_t>(game.players())));
  const double u = rng.uniform();
  pair.x = resample(pair.x, player, u < zero_probability(game, pair.x, player));
  pair.y = resample(pair.y, player, u < zero_probability(game, pair.y, player));
  return pair;
}

CoupledPair monotone_coupled_step(const GameSpec& game, CoupledPair pair, CounterRng& rng) {
  if (game.family() != Family::Ring) throw InvalidArgument("the monotone coupling is defined for ring games only");
  return coupled_step(game, pair, rng);
}

CoupledPair glued_step(const GameSpec& game, CoupledPair pair, CounterRng& rng) {
  if (pair.coalesced()) {
    pair.x = step_state(game, pair.x, rng);
    pair.y = pair.x;
    return pair;
  }
  pair.x = step_state(game, pair.x, rng);
  pair.y = step_state(game, pair.y, rng);
  return pair;
}

OrCouplingTrace trace_or_coupling(const GameSpec& game, CoupledPair pair, std::uint64_t cap, CounterRng& rng) {
  if (game.family() != Family::Or) throw InvalidArgument("trace_or_coupling needs an OR game");
  check_simulable(game);
  check_state(game, pair.x);
  check_state(game, pair.y);
  const int n = game.players();
  const std::uint64_t everyone = full_mask(n);
  OrCouplingTrace trace;
  bool coupled = pair.coalesced();
  bool zero = pair.x == 0;
  bool all = false;
  std::uint64_t selected = 0;
  for (std::uint64_t t = 0; !(coupled && zero && all); ++t) {
    if (t == cap) {
      trace.censored = true;
      if (!coupled) trace.coupled_at = cap;
      if (!zero) trace.first_zero = cap;
      if (!all) trace.all_selected = cap;
      return trace;
    }
    const auto player = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const double u = rng.uniform();
    pair.x = resample(pair.x, player, u < zero_probability(game, pair.x, player));
    pair.y = resample(pair.y, player, u < zero_probability(game, pair.y, player));
    selected |= std::uint64_t{1} << player;
    if (!coupled && pair.coalesced()) {
      coupled = true;
      trace.coupled_at = t + 1;
    }
    if (!zero && pair.x == 0) {
      zero = true;
      trace.first_zero = t + 1;
    }
    if (!all && selected == everyone) {
      all = true;
      trace.all_selected = t + 1;
    }
  }
  return trace;
}

TvBoundEstimate empirical_tv_bound(const GameSpec& game, const std::vector<std::uint64_t>& starts, std::uint64_t t,
                                   const SimConfig& config) {
  config.validate();
  check_simulable(game);
  for (auto s : starts) check_state(game, s);
  std::vector<std::uint64_t> distinct = starts;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  TvBoundEstimate est;
  est.monotone = game.family() == Family::Ring;
  if (distinct.size() <= 1) return est;

  if (est.monotone) {
    // Prob_z(tau_0 > t) can only grow as z moves down the order, so the
    // maximum over S sits at its minimal elements.
    std::vector<std::uint64_t> minimal;
    for (auto z : distinct) {
      const bool dominated = std::any_of(distinct.begin(), distinct.end(),
                                         [z](std::uint64_t w) { return w != z && precedes(w, z); });
      if (!dominated) minimal.push_back(z);
    }
    const std::uint64_t reps = config.replicas;
    std::vector<std::uint8_t> survived(minimal.size() * reps);
    parallel_for(minimal.size() * reps, config.threads, [&](std::uint64_t job) {
      CounterRng rng = replica_rng(config.seed, job);
      std::uint64_t s = minimal[job / reps];
      for (std::uint64_t k = 0; k < t && s != 0; ++k) s = step_state(game, s, rng);
      survived[job] = s != 0;
    });
    double worst = -1.0;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::uint64_t count = 0;
      for (std::uint64_t r = 0; r < reps; ++r) count += survived[i * reps + r];
      const double tail = static_cast<double>(count) / static_cast<double>(reps);
      if (tail > worst) {
        worst = tail;
        est.worst_start = minimal[i];
      }
    }
    est.bound = std::min(1.0, 2.0 * worst);
    est.half_width = 2.0 * hoeffding(reps);
  } else {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      for (std::size_t j = i + 1; j < distinct.size(); ++j) pairs.emplace_back(distinct[i], distinct[j]);
    }
    const std::uint64_t reps = config.replicas;
    std::vector<std::uint8_t> apart(pairs.size() * reps);
    parallel_for(pairs.size() * reps, config.threads, [&](std::uint64_t job) {
      CounterRng rng = replica_rng(config.seed, job);
      CoupledPair p{pairs[job / reps].first, pairs[job / reps].second};
      for (std::uint64_t k = 0; k < t && !p.coalesced(); ++k) p = glued_step(game, p, rng);
      apart[job] = !p.coalesced();
    });
    double worst = -1.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      std::uint64_t count = 0;
      for (std::uint64_t r = 0; r < reps; ++r) count += apart[i * reps + r];
      const double tail = static_cast<double>(count) / static_cast<double>(reps);
      if (tail > worst) {
        worst = tail;
        est.worst_start = pairs[i].first;
      }
    }
    est.bound = worst;
    est.half_width = hoeffding(reps);
  }
  est.upper = std::min(1.0, est.bound + est.half_width);
  return est;
}

}  // namespace logitmeta
