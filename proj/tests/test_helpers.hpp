#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "nearband/matrix.hpp"
#include "nearband/rng.hpp"

namespace testutil {

inline nearband::Matrix random_matrix(std::uint64_t seed, std::size_t rows,
                                      std::size_t cols, double lo = -1.0,
                                      double hi = 1.0) {
  nearband::Rng rng(seed);
  nearband::Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
  return m;
}

inline nearband::Matrix random_gaussian(std::uint64_t seed, std::size_t rows,
                                        std::size_t cols) {
  nearband::Rng rng(seed);
  nearband::Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.gaussian();
  return m;
}

inline double max_abs_diff(const nearband::Matrix& a,
                           const nearband::Matrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

// Independent singular-value oracle: classical two-sided Jacobi
// eigenvalue iteration on the Gram matrix X^T X (or X X^T, whichever is
// smaller). Deliberately a different algorithm and code path from the
// library's one-sided SVD.
inline std::vector<double> oracle_singular_values(const nearband::Matrix& x) {
  using nearband::Matrix;
  const bool wide = x.cols() > x.rows();
  const Matrix g = wide ? x * x.transpose() : x.transpose() * x;
  const std::size_t n = g.rows();
  Matrix a = g;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-30 * std::max(1.0, a.max_abs() * a.max_abs())) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = std::sqrt(std::max(0.0, a(i, i)));
  std::sort(vals.begin(), vals.end(), std::greater<>());
  return vals;
}

}  // namespace testutil
