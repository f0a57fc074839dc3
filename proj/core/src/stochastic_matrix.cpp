#include "logitmeta/stochastic_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "logitmeta/error.hpp"

namespace logitmeta {

double TransitionOperator::entry(std::size_t from, std::size_t to) const {
  double value = 0.0;
  for_each_in_row(from, [&](std::size_t y, double p) {
    if (y == to) value = p;
  });
  return value;
}

StochasticMatrix::StochasticMatrix(std::size_t size, std::vector<double> entries)
    : n_(size), a_(std::move(entries)) {
  if (a_.size() != n_ * n_) throw InvalidArgument("matrix entry count does not match its dimension");
  for (std::size_t i = 0; i < n_; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      const double v = a_[i * n_ + j];
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw InvalidArgument("matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") is negative or not finite");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRowTolerance) {
      throw InvalidArgument("matrix row " + std::to_string(i) + " does not sum to 1");
    }
  }
}

StochasticMatrix StochasticMatrix::identity(std::size_t size) {
  std::vector<double> a(size * size, 0.0);
  for (std::size_t i = 0; i < size; ++i) a[i * size + i] = 1.0;
  return StochasticMatrix(size, std::move(a));
}

void StochasticMatrix::apply(std::span<const double> in, std::span<double> out) const {
  if (in.size() != n_ || out.size() != n_) throw InvalidArgument("apply: dimension mismatch");
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const double w = in[i];
    if (w == 0.0) continue;
    const double* r = a_.data() + i * n_;
    for (std::size_t j = 0; j < n_; ++j) out[j] += w * r[j];
  }
}

void StochasticMatrix::for_each_in_row(std::size_t from, const RowVisitor& visit) const {
  const double* r = a_.data() + from * n_;
  for (std::size_t j = 0; j < n_; ++j) {
    if (r[j] != 0.0) visit(j, r[j]);
  }
}

double StochasticMatrix::max_row_sum_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n_; ++j) sum += a_[i * n_ + j];
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

}  // namespace logitmeta
