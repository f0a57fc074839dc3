#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace logitmeta {

class StateSet;

// Probability vector over an enumerated state space.
class Distribution {
 public:
  static constexpr double kSumTolerance = 1e-9;

  Distribution() = default;
  // Validates nonnegativity and unit mass within kSumTolerance.
  explicit Distribution(std::vector<double> probabilities);

  // Skips validation; for vectors produced by stochastic evolution.
  static Distribution trusted(std::vector<double> probabilities);

  static Distribution uniform(std::size_t size);
  static Distribution point_mass(std::size_t size, std::size_t state);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> values() const { return p_; }
  const std::vector<double>& vector() const { return p_; }
  auto begin() const { return p_.begin(); }
  auto end() const { return p_.end(); }

  double total() const;
  double mass(const StateSet& set) const;
  std::vector<std::size_t> support() const;
  // The state carrying all the mass, if there is one.
  std::optional<std::size_t> point_mass_state() const;

 private:
  std::vector<double> p_;
};

// Half L1 distance.
double tv_distance(std::span<const double> mu, std::span<const double> nu);
double tv_distance(const Distribution& mu, const Distribution& nu);

}  // namespace logitmeta
