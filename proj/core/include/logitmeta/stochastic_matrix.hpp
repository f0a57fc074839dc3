#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace logitmeta {

// Row-stochastic operator on an enumerated state space. Implementations are
// immutable after construction and safe to share across threads.
class TransitionOperator {
 public:
  using RowVisitor = std::function<void(std::size_t to, double probability)>;

  virtual ~TransitionOperator() = default;

  virtual std::size_t size() const = 0;

  // out = in * P (distribution row vector times the matrix).
  virtual void apply(std::span<const double> in, std::span<double> out) const = 0;

  // Visits every nonzero P(from, .) exactly once per target state.
  virtual void for_each_in_row(std::size_t from, const RowVisitor& visit) const = 0;

  double entry(std::size_t from, std::size_t to) const;
};

// Dense row-major stochastic matrix.
class StochasticMatrix final : public TransitionOperator {
 public:
  static constexpr double kRowTolerance = 1e-9;

  StochasticMatrix() = default;
  // Validates nonnegativity and row sums within kRowTolerance.
  StochasticMatrix(std::size_t size, std::vector<double> entries);

  static StochasticMatrix identity(std::size_t size);

  std::size_t size() const override { return n_; }
  void apply(std::span<const double> in, std::span<double> out) const override;
  void for_each_in_row(std::size_t from, const RowVisitor& visit) const override;

  double operator()(std::size_t from, std::size_t to) const { return a_[from * n_ + to]; }
  std::span<const double> row(std::size_t from) const { return {a_.data() + from * n_, n_}; }
  const std::vector<double>& entries() const { return a_; }

  // max_x |sum_y P(x,y) - 1|
  double max_row_sum_error() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

}  // namespace logitmeta
