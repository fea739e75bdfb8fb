#pragma once

#include <cstddef>
#include <vector>

#include "nearband/linalg.hpp"
#include "nearband/matrix.hpp"

namespace nearband {

/// Index data splitting an M x M matrix K and its inverse into
/// complementary blocks. K splits its rows at n and its columns at
/// n + p; the inverse splits the other way around:
///
///   K = ( A B )        K^-1 = ( E C )
///       ( G D )               ( H F )
///
/// with A of size n x (n+p) and C of size (n+p) x (M-n). All four
/// blocks are nonempty on each side: 1 <= n, 0 <= p, n + p <= M - 1.
struct BlockPartition {
  std::size_t order;   // M
  std::size_t split;   // n
  std::size_t offset;  // p

  BlockPartition(std::size_t m, std::size_t n, std::size_t p);

  std::size_t top_rows() const { return split; }                    // n
  std::size_t left_cols() const { return split + offset; }          // n+p
  std::size_t bottom_rows() const { return order - split; }         // M-n
  std::size_t right_cols() const { return order - split - offset; } // M-n-p
};

/// A matrix, its inverse, and all eight named blocks.
struct PartitionedSystem {
  Matrix K;
  Matrix Kinv;
  BlockPartition partition;
  Matrix A, B, G, D;  // blocks of K
  Matrix E, C, H, F;  // blocks of K^-1
  double cond;        // sigma_1(K) / sigma_M(K)
};

/// Numerical verdict on nullity(B) = nullity(C). Nullity here is the
/// kernel dimension, cols - rank, the quantity the theorem equates.
struct NullityReport {
  std::size_t nullity_B;
  std::size_t nullity_C;
  std::size_t rank_B;
  std::size_t rank_C;
  double tolerance;
  bool theorem_holds;
  bool ill_conditioned;  // cond(K) > 1e8: equality is only corroborated
};

/// One row of the banded-corollary scan: for a split at n, the detected
/// rank of C and the ratio sigma_{p+1}(C) / sigma_1(C).
struct BandedCheckRow {
  std::size_t n;
  std::size_t rank_C;
  double tail_ratio;
};

/// Inverts K and slices both matrices. Throws partition-bounds for an
/// inadmissible (n, p) and singular-matrix when K cannot be inverted.
PartitionedSystem partition_system(const Matrix& k, std::size_t n,
                                   std::size_t p);

NullityReport check_nullity_theorem(const PartitionedSystem& sys,
                                    double rel_tol = kDefaultRankTol);

/// Scans every admissible split n of a banded matrix and reports the
/// rank of the off-diagonal block C of K^-1. Throws bandwidth-violation
/// (naming the offending entry) if K is not banded as claimed.
std::vector<BandedCheckRow> check_banded_corollary(
    const Matrix& k, std::size_t bandwidth, double rel_tol = kDefaultRankTol);

/// Embeds an n x (M-n-p) block into the B position of an M x M zero
/// matrix. Zero padding preserves singular values, so norms of the
/// embedding equal norms of the block.
Matrix embed_b_block(const Matrix& b, const BlockPartition& part);

}  // namespace nearband
