#pragma once

#include <cstddef>
#include <vector>

#include "nearband/matrix.hpp"

namespace nearband {

/// Singular value decomposition X = left * diag(values) * right^T with
/// min(rows, cols) columns in each factor. Values are sorted descending;
/// the first nonzero entry of every left singular vector is non-negative
/// so that identical inputs always produce identical factors.
struct SvdFactors {
  Matrix left;
  std::vector<double> values;
  Matrix right;

  /// left * diag(values) * right^T.
  Matrix reconstruct() const;
  /// Same product with values of index >= keep zeroed.
  Matrix reconstruct_truncated(std::size_t keep) const;
  /// left * diag(tail) * right^T with values of index < skip zeroed,
  /// i.e. the part discarded by reconstruct_truncated(skip).
  Matrix reconstruct_tail(std::size_t skip) const;
};

/// Relative rank tolerance used whenever the caller does not pass one.
inline constexpr double kDefaultRankTol = 1e-8;

/// One-sided Jacobi SVD with a fixed cyclic sweep order; deterministic
/// for identical input. Throws invalid-input on non-finite entries.
SvdFactors svd(const Matrix& x);

/// Largest singular value (spectral norm).
double operator_norm(const Matrix& x);

/// Inverse via Gauss-Jordan elimination with partial pivoting. A matrix
/// whose smallest singular value is below 1e-13 times the largest is
/// rejected as singular-to-tolerance.
Matrix invert(const Matrix& x);

/// Number of singular values <= rel_tol * sigma_1(x). For a zero matrix
/// this is min(rows, cols): every singular value is negligible.
std::size_t nullity(const Matrix& x, double rel_tol = kDefaultRankTol);

/// min(rows, cols) - nullity(x, rel_tol).
std::size_t numerical_rank(const Matrix& x, double rel_tol = kDefaultRankTol);

/// Throws invalid-input when the matrix contains NaN or Inf.
void require_finite(const Matrix& x, const char* where);

}  // namespace nearband
