#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "logitmeta/distribution.hpp"
#include "logitmeta/stochastic_matrix.hpp"

namespace logitmeta {

enum class CertificateMode { Exact, Amplified };

// Record of an (epsilon_tv, T)-metastability check of mu:
// ||mu P^t - mu|| <= epsilon_tv for every t <= T.
struct MetastabilityCertificate {
  std::string distribution_id;
  double epsilon_tv = 0.0;
  std::uint64_t horizon = 0;
  CertificateMode mode = CertificateMode::Exact;
  // Exact mode: ||mu P^t - mu|| for t = 0..checked (checked < horizon only
  // when stopped at the first violation). Amplified mode: {0, one_step_drift}.
  std::vector<double> drift_curve;
  double one_step_drift = 0.0;
  bool valid = false;
  std::optional<std::size_t> point_mass_state;

  double drift_max() const;
  std::uint64_t checked() const { return drift_curve.empty() ? 0 : drift_curve.size() - 1; }
  // {mu, epsilon_tv, T, mode, driftMax, curveFile}
  nlohmann::json to_json(const std::string& curve_file = "") const;
};

MetastabilityCertificate certify_exact(const Distribution& mu, const TransitionOperator& p, double epsilon_tv,
                                       std::uint64_t horizon, const std::string& id = "mu",
                                       bool stop_at_violation = false);

// ||mu P - mu|| summed from the off-diagonal flow, so a small drift out of
// heavy states keeps its relative precision.
double one_step_drift(const Distribution& mu, const TransitionOperator& p);

// one_step_drift * T: the budget that (d, 1)-metastability certifies at horizon T.
double amplify(double one_step_drift, std::uint64_t horizon);

// Valid iff amplify(||mu P - mu||, T) <= epsilon_tv.
MetastabilityCertificate certify_amplified(const Distribution& mu, const TransitionOperator& p, double epsilon_tv,
                                           std::uint64_t horizon, const std::string& id = "mu");

// max_{x in starts} ||P^t(x,.) - mu|| for t = 0..t_max.
std::vector<double> tv_curve(const Distribution& mu, const TransitionOperator& p,
                             const std::vector<std::size_t>& starts, std::uint64_t t_max);

struct PseudoMixReport {
  std::string target_id;
  std::vector<std::size_t> start_set;
  double epsilon_tv = 0.0;
  std::optional<std::uint64_t> t_found;
  std::uint64_t cap = 0;
  // max over the start set of the distance to the target, t = 0..t_found (or cap)
  std::vector<double> tv_curve;

  bool found() const { return t_found.has_value(); }
  nlohmann::json to_json() const;
};

// Tolerance added to epsilon_tv when comparing, so that exact ties computed
// in floating point count as reached.
inline constexpr double kTvSlack = 1e-12;

PseudoMixReport pseudo_mix_time(const Distribution& mu, const TransitionOperator& p,
                                const std::vector<std::size_t>& starts, double epsilon_tv, std::uint64_t cap,
                                const std::string& id = "mu");

// [begin, end] on which every start in S stays within `budget` of mu.
struct GuaranteedWindow {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  double budget = 0.0;
  // Filled by verify_window.
  std::uint64_t verified_until = 0;
  double max_tv = 0.0;
  bool verified = false;
};

// [t_found, t_found + T] with budget 2 epsilon_tv. Requires a valid
// certificate and a found report with the same epsilon_tv.
GuaranteedWindow extend_window(const MetastabilityCertificate& cert, const PseudoMixReport& report);

// Evolves every start through the window (up to iteration_cap) and records the
// largest distance seen.
GuaranteedWindow verify_window(GuaranteedWindow window, const Distribution& mu, const TransitionOperator& p,
                               const std::vector<std::size_t>& starts, std::uint64_t iteration_cap);

// epsilon + (1 - epsilon) (1 - cdf[t]) for a certificate of a point mass;
// cdf is Prob_x(tau_y <= t).
std::vector<double> tv_bound_via_hitting(const MetastabilityCertificate& cert, std::span<const double> hit_cdf);

// epsilon + tail[t], tail[t] = max_{x,y in S} Prob(tau_couple > t). Requires the
// support of mu to lie in S.
std::vector<double> tv_bound_via_coupling(const MetastabilityCertificate& cert, const Distribution& mu,
                                          const std::vector<std::size_t>& support_set,
                                          std::span<const double> coupling_tail);

}  // namespace logitmeta
