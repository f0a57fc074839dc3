#include "logitmeta/metastability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "logitmeta/error.hpp"

namespace logitmeta {

namespace {

void check_dims(const Distribution& mu, const TransitionOperator& p) {
  if (mu.size() != p.size()) throw InvalidArgument("distribution and chain have different dimensions");
}

void check_epsilon(double epsilon_tv) {
  if (!(epsilon_tv >= 0.0)) throw InvalidArgument("epsilon_tv must be >= 0");
}

void check_starts(const std::vector<std::size_t>& starts, std::size_t size) {
  if (starts.empty()) throw InvalidArgument("start set is empty");
  for (auto x : starts) {
    if (x >= size) throw InvalidArgument("start state " + std::to_string(x) + " out of range");
  }
}

// Rows P^t(x, .) for every start, advanced one step at a time.
class RowEvolution {
 public:
  RowEvolution(const TransitionOperator& p, const std::vector<std::size_t>& starts)
      : p_(p), rows_(starts.size(), std::vector<double>(p.size(), 0.0)), scratch_(p.size()) {
    for (std::size_t i = 0; i < starts.size(); ++i) rows_[i][starts[i]] = 1.0;
  }

  void advance() {
    for (auto& row : rows_) {
      p_.apply(row, scratch_);
      row.swap(scratch_);
    }
  }

  double max_tv(const Distribution& mu) const {
    double worst = 0.0;
    for (const auto& row : rows_) worst = std::max(worst, tv_distance(row, mu.values()));
    return worst;
  }

 private:
  const TransitionOperator& p_;
  std::vector<std::vector<double>> rows_;
  std::vector<double> scratch_;
};

}  // namespace

double MetastabilityCertificate::drift_max() const {
  double m = 0.0;
  for (double d : drift_curve) m = std::max(m, d);
  if (mode == CertificateMode::Amplified) m = amplify(one_step_drift, horizon);
  return m;
}

nlohmann::json MetastabilityCertificate::to_json(const std::string& curve_file) const {
  nlohmann::json j;
  j["mu"] = distribution_id;
  j["epsilon_tv"] = epsilon_tv;
  j["T"] = horizon;
  j["mode"] = mode == CertificateMode::Exact ? "exact" : "amplified";
  j["driftMax"] = drift_max();
  j["curveFile"] = curve_file.empty() ? nlohmann::json(nullptr) : nlohmann::json(curve_file);
  j["oneStepDrift"] = one_step_drift;
  j["valid"] = valid;
  return j;
}

MetastabilityCertificate certify_exact(const Distribution& mu, const TransitionOperator& p, double epsilon_tv,
                                       std::uint64_t horizon, const std::string& id, bool stop_at_violation) {
  check_dims(mu, p);
  check_epsilon(epsilon_tv);
  MetastabilityCertificate cert;
  cert.distribution_id = id;
  cert.epsilon_tv = epsilon_tv;
  cert.horizon = horizon;
  cert.mode = CertificateMode::Exact;
  cert.point_mass_state = mu.point_mass_state();
  cert.drift_curve.reserve(horizon + 1);
  cert.drift_curve.push_back(0.0);
  cert.valid = true;

  std::vector<double> cur(mu.begin(), mu.end());
  std::vector<double> next(cur.size());
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    p.apply(cur, next);
    cur.swap(next);
    const double d = tv_distance(cur, mu.values());
    cert.drift_curve.push_back(d);
    if (t == 1) cert.one_step_drift = d;
    if (d > epsilon_tv + kTvSlack) {
      cert.valid = false;
      if (stop_at_violation) break;
    }
  }
  return cert;
}

double one_step_drift(const Distribution& mu, const TransitionOperator& p) {
  check_dims(mu, p);
  std::vector<double> diff(mu.size(), 0.0);
  for (std::size_t x = 0; x < mu.size(); ++x) {
    const double m = mu[x];
    if (m == 0.0) continue;
    p.for_each_in_row(x, [&](std::size_t to, double prob) {
      if (to == x) return;
      diff[to] += m * prob;
      diff[x] -= m * prob;
    });
  }
  double sum = 0.0;
  for (double d : diff) sum += std::abs(d);
  return 0.5 * sum;
}

double amplify(double one_step_drift, std::uint64_t horizon) {
  if (!(one_step_drift >= 0.0)) throw InvalidArgument("one-step drift must be >= 0");
  return one_step_drift * static_cast<double>(horizon);
}

MetastabilityCertificate certify_amplified(const Distribution& mu, const TransitionOperator& p, double epsilon_tv,
                                           std::uint64_t horizon, const std::string& id) {
  check_dims(mu, p);
  check_epsilon(epsilon_tv);
  MetastabilityCertificate cert;
  cert.distribution_id = id;
  cert.epsilon_tv = epsilon_tv;
  cert.horizon = horizon;
  cert.mode = CertificateMode::Amplified;
  cert.point_mass_state = mu.point_mass_state();
  cert.one_step_drift = one_step_drift(mu, p);
  cert.drift_curve = {0.0, cert.one_step_drift};
  cert.valid = amplify(cert.one_step_drift, horizon) <= epsilon_tv + kTvSlack;
  return cert;
}

std::vector<double> tv_curve(const Distribution& mu, const TransitionOperator& p,
                             const std::vector<std::size_t>& starts, std::uint64_t t_max) {
  check_dims(mu, p);
  check_starts(starts, p.size());
  RowEvolution rows(p, starts);
  std::vector<double> curve;
  curve.reserve(t_max + 1);
  curve.push_back(rows.max_tv(mu));
  for (std::uint64_t t = 1; t <= t_max; ++t) {
    rows.advance();
    curve.push_back(rows.max_tv(mu));
  }
  return curve;
}

nlohmann::json PseudoMixReport::to_json() const {
  nlohmann::json j;
  j["target"] = target_id;
  j["startSet"] = start_set;
  j["epsilon_tv"] = epsilon_tv;
  j["tFound"] = t_found ? nlohmann::json(*t_found) : nlohmann::json(nullptr);
  j["cap"] = cap;
  return j;
}

PseudoMixReport pseudo_mix_time(const Distribution& mu, const TransitionOperator& p,
                                const std::vector<std::size_t>& starts, double epsilon_tv, std::uint64_t cap,
                                const std::string& id) {
  check_dims(mu, p);
  check_epsilon(epsilon_tv);
  check_starts(starts, p.size());
  PseudoMixReport report;
  report.target_id = id;
  report.start_set = starts;
  report.epsilon_tv = epsilon_tv;
  report.cap = cap;
  RowEvolution rows(p, starts);
  for (std::uint64_t t = 0;; ++t) {
    const double d = rows.max_tv(mu);
    report.tv_curve.push_back(d);
    if (d <= epsilon_tv + kTvSlack) {
      report.t_found = t;
      return report;
    }
    if (t == cap) return report;
    rows.advance();
  }
}

GuaranteedWindow extend_window(const MetastabilityCertificate& cert, const PseudoMixReport& report) {
  if (!cert.valid) throw InvalidArgument("extend_window: certificate is not valid");
  if (!report.found()) throw InvalidArgument("extend_window: pseudo-mixing time not found within the cap");
  if (cert.epsilon_tv != report.epsilon_tv) throw InvalidArgument("extend_window: epsilon_tv differs");
  if (cert.distribution_id != report.target_id) throw InvalidArgument("extend_window: different distributions");
  GuaranteedWindow w;
  w.begin = *report.t_found;
  w.end = w.begin + cert.horizon;
  w.budget = 2.0 * cert.epsilon_tv;
  return w;
}

GuaranteedWindow verify_window(GuaranteedWindow window, const Distribution& mu, const TransitionOperator& p,
                               const std::vector<std::size_t>& starts, std::uint64_t iteration_cap) {
  check_dims(mu, p);
  check_starts(starts, p.size());
  const std::uint64_t last = std::min(window.end, iteration_cap);
  RowEvolution rows(p, starts);
  window.max_tv = 0.0;
  for (std::uint64_t t = 0; t <= last; ++t) {
    if (t > 0) rows.advance();
    if (t >= window.begin) window.max_tv = std::max(window.max_tv, rows.max_tv(mu));
  }
  window.verified_until = last;
  window.verified = window.max_tv <= window.budget + kTvSlack;
  return window;
}

std::vector<double> tv_bound_via_hitting(const MetastabilityCertificate& cert, std::span<const double> hit_cdf) {
  if (!cert.point_mass_state) throw InvalidArgument("tv_bound_via_hitting: the certified distribution is not a point mass");
  const double eps = cert.epsilon_tv;
  std::vector<double> bound(hit_cdf.size());
  for (std::size_t t = 0; t < hit_cdf.size(); ++t) bound[t] = eps + (1.0 - eps) * (1.0 - hit_cdf[t]);
  return bound;
}

std::vector<double> tv_bound_via_coupling(const MetastabilityCertificate& cert, const Distribution& mu,
                                          const std::vector<std::size_t>& support_set,
                                          std::span<const double> coupling_tail) {
  std::vector<bool> inside(mu.size(), false);
  for (auto x : support_set) {
    if (x >= mu.size()) throw InvalidArgument("tv_bound_via_coupling: state out of range");
    inside[x] = true;
  }
  for (std::size_t x = 0; x < mu.size(); ++x) {
    if (mu[x] > 0.0 && !inside[x]) {
      throw InvalidArgument("tv_bound_via_coupling: mu charges state " + std::to_string(x) + " outside S");
    }
  }
  std::vector<double> bound(coupling_tail.size());
  for (std::size_t t = 0; t < coupling_tail.size(); ++t) bound[t] = cert.epsilon_tv + coupling_tail[t];
  return bound;
}

}  // namespace logitmeta
