#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nearband/matrix.hpp"
#include "nearband/partition.hpp"

namespace nearband {

/// Best rank-p approximation of a block, built by zeroing the tail of
/// its SVD. The error sigma_{p+1} is optimal over all rank-p matrices.
struct TruncationResult {
  Matrix L;                  // rank <= p
  double error;              // = sigma_{p+1}, 0 when the tail is empty
  std::vector<double> tail;  // sigma_{p+1}, ..., sigma_k
};

/// Neumann-series error bound for approximating C by the unperturbed
/// block C0. `bound` and `measured` are absent when the series may
/// diverge (valid == false) or, for `measured`, when K0 + dK is itself
/// singular.
struct NeumannReport {
  double epsilon;     // ||dK|| (equals ||B|| by zero padding)
  double norm_K0inv;  // ||K0^-1||
  std::optional<double> bound;
  std::optional<double> measured;  // ||C - C0||
  bool valid;                      // epsilon < 1 / ||K0^-1||
};

/// Singular values below 1e-15 * sigma_1 are treated as exact zeros, so
/// an exactly-rank-p block reports error 0 instead of roundoff noise.
TruncationResult best_rank_approx(const Matrix& c, std::size_t p);

/// bound = ||K0^-1||^2 eps / (1 - ||K0^-1|| eps). The perturbation must
/// be supported on the B block of the partition (rows < n, cols >= n+p).
NeumannReport neumann_bound(const Matrix& k0, const Matrix& delta_k,
                            const BlockPartition& parts);

}  // namespace nearband
