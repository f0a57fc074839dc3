#include "logitmeta/distribution.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "logitmeta/error.hpp"
#include "logitmeta/subsets.hpp"

namespace logitmeta {

Distribution::Distribution(std::vector<double> probabilities) : p_(std::move(probabilities)) {
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (!(p_[i] >= 0.0) || !std::isfinite(p_[i])) {
      throw InvalidArgument("distribution entry " + std::to_string(i) + " is negative or not finite");
    }
  }
  if (std::abs(total() - 1.0) > kSumTolerance) {
    throw InvalidArgument("distribution does not sum to 1");
  }
}

Distribution Distribution::trusted(std::vector<double> probabilities) {
  Distribution d;
  d.p_ = std::move(probabilities);
  return d;
}

Distribution Distribution::uniform(std::size_t size) {
  if (size == 0) throw InvalidArgument("uniform distribution over an empty space");
  return trusted(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

Distribution Distribution::point_mass(std::size_t size, std::size_t state) {
  if (state >= size) throw InvalidArgument("point mass outside the state space");
  std::vector<double> p(size, 0.0);
  p[state] = 1.0;
  return trusted(std::move(p));
}

double Distribution::total() const { return std::accumulate(p_.begin(), p_.end(), 0.0); }

double Distribution::mass(const StateSet& set) const {
  if (set.universe() != p_.size()) throw InvalidArgument("subset and distribution sizes differ");
  double m = 0.0;
  for (std::size_t x : set.members()) m += p_[x];
  return m;
}

std::vector<std::size_t> Distribution::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (p_[i] > 0.0) s.push_back(i);
  }
  return s;
}

std::optional<std::size_t> Distribution::point_mass_state() const {
  const auto s = support();
  if (s.size() == 1) return s.front();
  return std::nullopt;
}

double tv_distance(std::span<const double> mu, std::span<const double> nu) {
  if (mu.size() != nu.size()) throw InvalidArgument("tv_distance: dimension mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) sum += std::abs(mu[i] - nu[i]);
  return 0.5 * sum;
}

double tv_distance(const Distribution& mu, const Distribution& nu) {
  return tv_distance(mu.values(), nu.values());
}

}  // namespace logitmeta
