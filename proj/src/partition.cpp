#include "nearband/partition.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nearband/errors.hpp"

namespace nearband {

BlockPartition::BlockPartition(std::size_t m, std::size_t n, std::size_t p)
    : order(m), split(n), offset(p) {
  if (n < 1 || n + p > m - 1 || m < 2)
    throw Error(ErrorCode::partition_bounds,
                "need 1 <= n and n + p <= M - 1 (M=" + std::to_string(m) +
                    ", n=" + std::to_string(n) + ", p=" + std::to_string(p) +
                    ")");
}

PartitionedSystem partition_system(const Matrix& k, std::size_t n,
                                   std::size_t p) {
  require_finite(k, "partition_system");
  if (k.rows() != k.cols() || k.empty())
    throw Error(ErrorCode::invalid_input, "K must be square and nonempty");
  BlockPartition part(k.rows(), n, p);
  Matrix kinv = invert(k);

  const std::size_t M = part.order;
  const std::size_t np = part.left_cols();

  PartitionedSystem sys{
      k,
      kinv,
      part,
      /*A=*/k.block(0, 0, n, np),
      /*B=*/k.block(0, np, n, M - n - p),
      /*G=*/k.block(n, 0, M - n, np),
      /*D=*/k.block(n, np, M - n, M - n - p),
      /*E=*/kinv.block(0, 0, np, n),
      /*C=*/kinv.block(0, n, np, M - n),
      /*H=*/kinv.block(np, 0, M - n - p, n),
      /*F=*/kinv.block(np, n, M - n - p, M - n),
      /*cond=*/0.0,
  };
  const auto vals = svd(k).values;
  sys.cond = vals.back() > 0.0 ? vals.front() / vals.back()
                               : std::numeric_limits<double>::infinity();
  return sys;
}

NullityReport check_nullity_theorem(const PartitionedSystem& sys,
                                    double rel_tol) {
  const std::size_t rank_b = numerical_rank(sys.B, rel_tol);
  const std::size_t rank_c = numerical_rank(sys.C, rel_tol);
  NullityReport report{
      /*nullity_B=*/sys.B.cols() - rank_b,
      /*nullity_C=*/sys.C.cols() - rank_c,
      rank_b,
      rank_c,
      rel_tol,
      /*theorem_holds=*/false,
      /*ill_conditioned=*/sys.cond > 1e8,
  };
  report.theorem_holds = report.nullity_B == report.nullity_C;
  return report;
}

std::vector<BandedCheckRow> check_banded_corollary(const Matrix& k,
                                                   std::size_t bandwidth,
                                                   double rel_tol) {
  require_finite(k, "check_banded_corollary");
  if (k.rows() != k.cols() || k.empty())
    throw Error(ErrorCode::invalid_input, "K must be square and nonempty");
  const std::size_t M = k.rows();
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = 0; j < M; ++j) {
      const std::size_t dist = i > j ? i - j : j - i;
      if (dist > bandwidth && k(i, j) != 0.0)
        throw Error(ErrorCode::bandwidth_violation,
                    "entry (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") = " + std::to_string(k(i, j)) +
                        " lies outside bandwidth " + std::to_string(bandwidth));
    }
  if (bandwidth > M - 2)
    throw Error(ErrorCode::invalid_argument,
                "bandwidth leaves no admissible split");

  const Matrix kinv = invert(k);
  const std::size_t p = bandwidth;
  std::vector<BandedCheckRow> rows;
  rows.reserve(M - 1 - p);
  for (std::size_t n = 1; n + p <= M - 1; ++n) {
    const Matrix c = kinv.block(0, n, n + p, M - n);
    const auto vals = svd(c).values;
    const double s1 = vals.front();
    std::size_t rank = 0;
    if (s1 > 0.0)
      for (double s : vals)
        if (s > rel_tol * s1) ++rank;
    // Admissible splits always leave C with at least p+1 singular values.
    const double ratio = s1 > 0.0 ? vals[p] / s1 : 0.0;
    rows.push_back({n, rank, ratio});
  }
  return rows;
}

Matrix embed_b_block(const Matrix& b, const BlockPartition& part) {
  if (b.rows() != part.top_rows() || b.cols() != part.right_cols())
    throw Error(ErrorCode::invalid_argument,
                "B block has shape " + std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()) + ", expected " +
                    std::to_string(part.top_rows()) + "x" +
                    std::to_string(part.right_cols()));
  Matrix full(part.order, part.order, 0.0);
  full.set_block(0, part.left_cols(), b);
  return full;
}

}  // namespace nearband
