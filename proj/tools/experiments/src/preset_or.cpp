#include <algorithm>
#include <cmath>

#include "logitmeta/chain.hpp"
#include "logitmeta/logit_kernel.hpp"
#include "logitmeta/metastability.hpp"
#include "support.hpp"

namespace experiments {

using logitmeta::Distribution;
using logitmeta::GameSpec;
using logitmeta::LogitKernel;

namespace {

double uniform_drift_formula(int n, double beta) { return std::ldexp(std::tanh(beta / 2.0), -n); }

std::uint64_t weight_state(int w) { return w >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1; }

}  // namespace

Summary preset_or_uniform_meta(const Params& p, const RunContext& ctx) {
  p.only({"n", "betas", "epsilon_tv", "cap"});
  const auto n = static_cast<int>(p.integer("n", 8));
  const auto betas = p.numbers("betas", {5.0});
  const double eps = p.number("epsilon_tv", 0.1);
  const std::uint64_t cap = p.count("cap", 100000);
  if (n < 1 || n > 20) p.fail("n", "must lie in [1, 20]");
  if (!(eps > 0.0 && eps <= 1.0)) p.fail("epsilon_tv", "must lie in (0, 1]");

  Summary s("or-uniform-meta");
  s.parameters() = {{"n", n}, {"betas", betas}, {"epsilon_tv", eps}, {"cap", cap}};
  const auto size = std::size_t{1} << n;
  const auto mu = Distribution::uniform(size);
  const auto horizon = static_cast<std::uint64_t>(std::floor(eps * std::ldexp(1.0, n)));

  for (double beta : betas) {
    if (beta < 0.0) p.fail("betas", "must be nonnegative");
    const LogitKernel kernel(GameSpec::or_game(n, beta));
    const std::string tag = "beta=" + fmt(beta);
    const double formula = uniform_drift_formula(n, beta);

    const auto amplified = logitmeta::certify_amplified(mu, kernel, eps, horizon, "U");
    s.measured()[tag]["one_step_drift"] = amplified.one_step_drift;
    s.measured()[tag]["formula"] = formula;
    s.measured()[tag]["certificate"] = amplified.to_json();
    s.close("or-uniform-one-step-drift", tag + ": ||UP - U|| == 2^-n (e^b-1)/(e^b+1)", amplified.one_step_drift,
            formula, 1e-12);
    s.holds("or-uniform-metastable", tag + ": U is (eps, eps 2^n)-metastable by amplification", amplified.valid);

    const std::uint64_t checked = std::min(horizon, cap);
    const auto exact = logitmeta::certify_exact(mu, kernel, eps, checked, "U");
    double worst_ratio = 0.0;
    for (std::size_t t = 1; t < exact.drift_curve.size(); ++t) {
      worst_ratio = std::max(worst_ratio, exact.drift_curve[t] / (static_cast<double>(t) * amplified.one_step_drift));
    }
    s.measured()[tag]["exact_checked_until"] = exact.checked();
    s.holds("or-uniform-metastable", tag + ": exact drift stays within eps up to t=" + std::to_string(checked),
            exact.valid);
    s.at_most("or-uniform-drift-subadditive", tag + ": max_t ||UP^t - U|| / (t ||UP - U||)", worst_ratio,
              1.0 + 1e-9);
    emit_table(s, ctx, "drift_" + tag + ".csv", {"t", "tv"}, curve_rows(exact.drift_curve));
  }
  return s;
}

Summary preset_or_pseudo_mix(const Params& p, const RunContext& ctx) {
  p.only({"n", "betas", "epsilon_tv", "weights"});
  const auto n = static_cast<int>(p.integer("n", 10));
  const auto betas = p.numbers("betas", {10.0, 20.0});
  const double eps = p.number("epsilon_tv", 0.1);
  const auto weights = p.integers("weights", {1, 5, 10});
  if (n < 2 || n > 20) p.fail("n", "must lie in [2, 20]");
  if (!(eps > 0.0 && eps < 1.0)) p.fail("epsilon_tv", "must lie in (0, 1)");
  for (auto w : weights) {
    if (w < 1 || w > n) p.fail("weights", "every weight must lie in [1, n]");
  }

  Summary s("or-pseudo-mix");
  s.parameters() = {{"n", n}, {"betas", betas}, {"epsilon_tv", eps}, {"weights", weights}};
  const auto size = std::size_t{1} << n;
  const auto mu = Distribution::uniform(size);
  const auto t0 = static_cast<std::uint64_t>(std::ceil(n * std::log(3.0 * n / eps)));
  const auto horizon = static_cast<std::uint64_t>(std::floor(eps * std::ldexp(1.0, n - 1)));
  s.measured()["window_begin"] = t0;
  s.measured()["horizon"] = horizon;
  if (t0 > horizon) {
    s.warn("ceil(n ln(3n/eps)) = " + std::to_string(t0) + " exceeds floor(eps 2^(n-1)) = " + std::to_string(horizon) +
           ": checking [t0, t0 + floor(eps 2^(n-1))] instead");
  }
  const std::uint64_t end = t0 + horizon;

  for (double beta : betas) {
    if (beta < 0.0) p.fail("betas", "must be nonnegative");
    const LogitKernel kernel(GameSpec::or_game(n, beta));
    const std::string tag = "beta=" + fmt(beta);
    const auto cert = logitmeta::certify_amplified(mu, kernel, eps / 2.0, horizon, "U");
    s.holds("or-uniform-metastable", tag + ": U is (eps/2, eps 2^(n-1))-metastable by amplification", cert.valid);
    const auto long_horizon = static_cast<std::uint64_t>(std::floor(eps * std::ldexp(1.0, n)));
    const auto long_cert = logitmeta::certify_amplified(mu, kernel, eps, long_horizon, "U");

    for (auto w : weights) {
      const std::size_t start = weight_state(static_cast<int>(w));
      const std::string where = tag + ", |x|=" + std::to_string(w);
      const auto curve = logitmeta::tv_curve(mu, kernel, {start}, end);
      const double worst = max_over(curve, t0, end);
      s.measured()[where]["max_tv_on_window"] = worst;
      s.at_most("or-pseudo-mix-window",
                where + ": max ||P^t(x,.) - U|| over [" + std::to_string(t0) + ", " + std::to_string(end) + "]", worst,
                2.0 * eps);

      const auto report = logitmeta::pseudo_mix_time(mu, kernel, {start}, eps, end, "U");
      s.measured()[where]["pseudo_mix_time"] = report.t_found ? static_cast<double>(*report.t_found) : -1.0;
      if (report.found() && long_cert.valid) {
        auto window = logitmeta::extend_window(long_cert, report);
        window = logitmeta::verify_window(window, mu, kernel, {start}, window.end);
        s.measured()[where]["extended_window"] = {window.begin, window.end};
        s.holds("or-pseudo-mix-extended-window",
                where + ": within " + fmt(window.budget) + " on [" + std::to_string(window.begin) + ", " +
                    std::to_string(window.end) + "]",
                window.verified);
      } else {
        s.warn(where + ": no pseudo-mixing time found up to " + std::to_string(end));
      }
      emit_table(s, ctx, "tv_" + tag + "_w" + std::to_string(w) + ".csv", {"t", "tv"}, curve_rows(curve));
    }
  }
  return s;
}

}  // namespace experiments
