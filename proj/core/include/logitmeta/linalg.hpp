#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace logitmeta {

// Small dense row-major matrix used by the direct solvers.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> a_;
};

inline constexpr double kPivotThreshold = 1e-13;

// Solves A x = b by Gaussian elimination with partial pivoting. Throws
// SingularSystem when a pivot falls below kPivotThreshold * max|A|.
std::vector<double> solve_linear(DenseMatrix a, std::vector<double> b);

// Solves the tridiagonal system
//   lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]
// with the Thomas algorithm, falling back to the pivoted dense solve when an
// elimination pivot collapses. lower[0] and upper[n-1] are ignored.
std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

}  // namespace logitmeta
