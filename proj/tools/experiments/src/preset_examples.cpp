#include <algorithm>
#include <cmath>

#include "logitmeta/birth_death.hpp"
#include "logitmeta/chain.hpp"
#include "logitmeta/metastability.hpp"
#include "support.hpp"

namespace experiments {

using logitmeta::Distribution;
using logitmeta::StochasticMatrix;

namespace {

constexpr double kExact = 1e-12;

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

Summary preset_toy3(const Params& p, const RunContext& ctx) {
  p.only({"chain_eps", "delta", "epsilon_tv"});
  const double e = p.number("chain_eps", 0.01);
  const double delta = p.number("delta", 0.05);
  const double eps_tv = p.number("epsilon_tv", 0.25);
  if (!(e > 0.0 && e < 1.0)) p.fail("chain_eps", "must lie in (0, 1)");
  if (!(delta > e && delta < 1.0)) p.fail("delta", "must lie in (chain_eps, 1)");

  Summary s("toy3");
  s.parameters() = {{"chain_eps", e}, {"delta", delta}, {"epsilon_tv", eps_tv}};
  const double h = (1.0 - e) / 2.0;
  const StochasticMatrix P(3, {e, h, h, e, 1.0 - e, 0.0, e, 0.0, 1.0 - e});
  const Distribution expected({e, h, h});

  const Distribution pi = logitmeta::stationary_distribution(P);
  s.measured()["stationary"] = pi.vector();
  s.close("toy3-stationary", "max |pi - (eps, (1-eps)/2, (1-eps)/2)|", max_abs_diff(pi.values(), expected.values()), 0.0,
          kExact);

  const Distribution one = logitmeta::evolve(Distribution::point_mass(3, 0), P, 1);
  s.close("toy3-one-step-stationary", "||P(0,.) - pi||", logitmeta::tv_distance(one, expected), 0.0, kExact);

  const auto report = logitmeta::pseudo_mix_time(expected, P, {0}, eps_tv, 100, "pi");
  s.measured()["pseudo_mix_time_from_0"] = report.t_found ? static_cast<double>(*report.t_found) : -1.0;
  s.holds("toy3-pseudo-mix-one-step", "t_pi^{0}(" + fmt(eps_tv) + ") == 1", report.t_found == std::uint64_t{1});

  // Point masses on states 1 and 2 stay delta-close for Theta(delta / eps) steps.
  const auto cap = static_cast<std::uint64_t>(std::ceil(20.0 * delta / e));
  for (std::size_t state : {std::size_t{1}, std::size_t{2}}) {
    const auto mu = Distribution::point_mass(3, state);
    const auto cert = logitmeta::certify_exact(mu, P, delta, cap, "mu" + std::to_string(state), true);
    const std::uint64_t horizon = cert.valid ? cap : cert.checked() - 1;
    const std::string tag = "mu" + std::to_string(state);
    s.measured()[tag + "_one_step_drift"] = cert.one_step_drift;
    s.measured()[tag + "_metastable_horizon"] = horizon;
    s.close("toy3-point-mass-drift", tag + " one-step drift == eps", cert.one_step_drift, e, kExact);
    s.at_least("toy3-point-mass-horizon-lower", tag + " horizon >= floor(delta/eps)", static_cast<double>(horizon),
               std::floor(delta / e));
    s.at_most("toy3-point-mass-horizon-upper", tag + " horizon <= 4 delta/eps", static_cast<double>(horizon),
              4.0 * delta / e);
    emit_table(s, ctx, "drift_" + tag + ".csv", {"t", "tv"}, curve_rows(cert.drift_curve));
  }
  return s;
}

Summary preset_coord2(const Params& p, const RunContext& ctx) {
  p.only({"a", "b", "c", "d", "beta"});
  const double a = p.number("a", 1.0);
  const double b = p.number("b", 1.0);
  const double c = p.number("c", 0.0);
  const double d = p.number("d", 0.0);
  const double beta = p.number("beta", 2.0);

  Summary s("coord2");
  s.parameters() = {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"beta", beta}};
  // Each player of a two-player ring meets its opponent on both sides, so
  // halving the payoffs gives the single-game utilities.
  logitmeta::GameSpec game = [&] {
    try {
      return logitmeta::GameSpec::ring(2, beta, {a / 2, b / 2, c / 2, d / 2});
    } catch (const logitmeta::InvalidArgument& e) {
      throw ConfigError(std::string("coord2: ") + e.what());
    }
  }();
  const double eps = logitmeta::logistic(-(a - d) * beta);
  const double del = logitmeta::logistic(-(b - c) * beta);
  s.measured()["eps"] = eps;
  s.measured()["delta"] = del;

  const StochasticMatrix P = logitmeta::build_transition_matrix(game);
  // Rows and columns in the order (0,0), (0,1), (1,0), (1,1); the state index
  // of (x0, x1) is x0 + 2 x1.
  const std::size_t idx[4] = {0, 2, 1, 3};
  const double expected[4][4] = {{1 - eps, eps / 2, eps / 2, 0},
                                 {(1 - eps) / 2, (eps + del) / 2, 0, (1 - del) / 2},
                                 {(1 - eps) / 2, 0, (eps + del) / 2, (1 - del) / 2},
                                 {0, del / 2, del / 2, 1 - del}};
  double worst = 0.0;
  for (int r = 0; r < 4; ++r) {
    for (int col = 0; col < 4; ++col) worst = std::max(worst, std::abs(P(idx[r], idx[col]) - expected[r][col]));
  }
  s.close("coord2-matrix", "max entry deviation from the closed-form matrix", worst, 0.0, kExact);

  const Distribution pi = logitmeta::gibbs_distribution(game);
  const double z = eps + del;
  const double pi_expected[4] = {del * (1 - eps) / z, eps * del / z, eps * del / z, eps * (1 - del) / z};
  worst = 0.0;
  for (int r = 0; r < 4; ++r) worst = std::max(worst, std::abs(pi[idx[r]] - pi_expected[r]));
  s.close("coord2-stationary", "max |pi - closed form|", worst, 0.0, kExact);
  s.measured()["stationary"] = {pi[0], pi[2], pi[1], pi[3]};

  const auto mu00 = Distribution::point_mass(4, 0);
  const auto mu11 = Distribution::point_mass(4, 3);
  const double drift00 = logitmeta::certify_amplified(mu00, P, 1.0, 1).one_step_drift;
  const double drift11 = logitmeta::certify_amplified(mu11, P, 1.0, 1).one_step_drift;
  s.close("coord2-point-mass-drift", "||mu00 P - mu00|| == eps", drift00, eps, kExact);
  s.close("coord2-point-mass-drift", "||mu11 P - mu11|| == delta", drift11, del, kExact);

  // (1/4, floor(1/(4 eps))) for mu00 via amplification, checked exactly.
  const auto horizon00 = static_cast<std::uint64_t>(std::floor(0.25 / std::max(eps, 1e-300)));
  const auto horizon11 = static_cast<std::uint64_t>(std::floor(0.25 / std::max(del, 1e-300)));
  const std::uint64_t cap = 1000000;
  const auto cert00 = logitmeta::certify_exact(mu00, P, 0.25, std::min(horizon00, cap), "mu00");
  const auto cert11 = logitmeta::certify_exact(mu11, P, 0.25, std::min(horizon11, cap), "mu11");
  s.holds("coord2-point-mass-metastable", "mu00 is (1/4, floor(1/(4 eps)))-metastable", cert00.valid);
  s.holds("coord2-point-mass-metastable", "mu11 is (1/4, floor(1/(4 delta)))-metastable", cert11.valid);
  emit_table(s, ctx, "drift_mu00.csv", {"t", "tv"}, curve_rows(cert00.drift_curve, 1 + cert00.checked() / 10000));

  if (std::abs(eps - del) <= 1e-15 * std::max(eps, del)) {
    const double sym[4] = {(1 - eps) / 2, eps / 2, eps / 2, (1 - eps) / 2};
    worst = 0.0;
    for (int r = 0; r < 4; ++r) worst = std::max(worst, std::abs(pi[idx[r]] - sym[r]));
    s.close("coord2-stationary-symmetric", "max |pi - ((1-eps)/2, eps/2, eps/2, (1-eps)/2)|", worst, 0.0, kExact);
    for (std::size_t start : {std::size_t{2}, std::size_t{1}}) {
      const std::string name = start == 2 ? "(0,1)" : "(1,0)";
      const auto after = logitmeta::evolve(Distribution::point_mass(4, start), P, 1);
      const double tv = logitmeta::tv_distance(after, pi);
      s.measured()["tv_after_one_step_from_" + name] = tv;
      s.close("coord2-one-step-distance", "||P(" + name + ",.) - pi|| == eps", tv, eps, kExact);
      const auto report = logitmeta::pseudo_mix_time(pi, P, {start}, eps, 10, "pi");
      s.holds("coord2-pseudo-mix-constant", "t_pi^{" + name + "}(eps) == 1", report.t_found == std::uint64_t{1});
    }
  } else {
    s.warn("eps != delta: the symmetric-case checks are skipped");
  }
  return s;
}

}  // namespace experiments
