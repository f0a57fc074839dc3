#include "logitmeta/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "logitmeta/error.hpp"

namespace logitmeta {

std::vector<double> solve_linear(DenseMatrix a, std::vector<double> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw InvalidArgument("solve_linear: dimension mismatch");

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
  }
  if (scale == 0.0) {
    if (n == 0) return {};
    throw SingularSystem("solve_linear: zero matrix");
  }
  const double tiny = kPivotThreshold * scale;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    }
    if (std::abs(a(p, k)) <= tiny) {
      throw SingularSystem("solve_linear: pivot below threshold at column " + std::to_string(k));
    }
    if (p != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(b[k], b[p]);
    }
    const double pivot = a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / pivot;
      if (f == 0.0) continue;
      a(i, k) = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a(k, j) * x[j];
    x[k] = s / a(k, k);
  }
  return x;
}

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (lower.size() != n || upper.size() != n || rhs.size() != n) {
    throw InvalidArgument("solve_tridiagonal: dimension mismatch");
  }
  if (n == 0) return {};

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    scale = std::max({scale, std::abs(diag[i]), i > 0 ? std::abs(lower[i]) : 0.0,
                      i + 1 < n ? std::abs(upper[i]) : 0.0});
  }
  const double tiny = kPivotThreshold * scale;

  std::vector<double> c(n, 0.0);
  std::vector<double> d(n, 0.0);
  bool collapsed = false;
  double denom = diag[0];
  if (std::abs(denom) <= tiny) {
    collapsed = true;
  } else {
    c[0] = n > 1 ? upper[0] / denom : 0.0;
    d[0] = rhs[0] / denom;
    for (std::size_t i = 1; i < n; ++i) {
      denom = diag[i] - lower[i] * c[i - 1];
      if (std::abs(denom) <= tiny) {
        collapsed = true;
        break;
      }
      c[i] = i + 1 < n ? upper[i] / denom : 0.0;
      d[i] = (rhs[i] - lower[i] * d[i - 1]) / denom;
    }
  }

  if (collapsed) {
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      a(i, i) = diag[i];
      if (i > 0) a(i, i - 1) = lower[i];
      if (i + 1 < n) a(i, i + 1) = upper[i];
    }
    return solve_linear(std::move(a), std::vector<double>(rhs.begin(), rhs.end()));
  }

  std::vector<double> x(n);
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

}  // namespace logitmeta
