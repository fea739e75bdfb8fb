#include "nearband/approx.hpp"

#include <string>

#include "nearband/errors.hpp"
#include "nearband/linalg.hpp"

namespace nearband {

TruncationResult best_rank_approx(const Matrix& c, std::size_t p) {
  require_finite(c, "best_rank_approx");
  SvdFactors f = svd(c);
  const std::size_t k = f.values.size();
  if (p > k)
    throw Error(ErrorCode::invalid_rank,
                "p = " + std::to_string(p) + " exceeds min dimension " +
                    std::to_string(k));
  const double s1 = f.values.front();
  for (double& s : f.values)
    if (s < 1e-15 * s1) s = 0.0;

  TruncationResult r;
  r.L = f.reconstruct_truncated(p);
  r.tail.assign(f.values.begin() + static_cast<std::ptrdiff_t>(p),
                f.values.end());
  r.error = r.tail.empty() ? 0.0 : r.tail.front();
  return r;
}

NeumannReport neumann_bound(const Matrix& k0, const Matrix& delta_k,
                            const BlockPartition& parts) {
  require_finite(k0, "neumann_bound");
  require_finite(delta_k, "neumann_bound");
  const std::size_t M = parts.order;
  if (k0.rows() != M || k0.cols() != M || delta_k.rows() != M ||
      delta_k.cols() != M)
    throw Error(ErrorCode::invalid_input,
                "K0 and dK must both be M x M for the given partition");
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = 0; j < M; ++j) {
      const bool in_b_block = i < parts.split && j >= parts.left_cols();
      if (!in_b_block && delta_k(i, j) != 0.0)
        throw Error(ErrorCode::invalid_input,
                    "dK must be supported on the B block only; entry (" +
                        std::to_string(i) + ", " + std::to_string(j) +
                        ") is nonzero");
    }

  const Matrix k0inv = invert(k0);
  NeumannReport rep;
  rep.epsilon = operator_norm(delta_k);
  rep.norm_K0inv = operator_norm(k0inv);
  rep.valid = rep.epsilon * rep.norm_K0inv < 1.0;
  if (rep.valid)
    rep.bound = rep.norm_K0inv * rep.norm_K0inv * rep.epsilon /
                (1.0 - rep.norm_K0inv * rep.epsilon);

  const auto c_block = [&](const Matrix& inv) {
    return inv.block(0, parts.split, parts.left_cols(), parts.bottom_rows());
  };
  try {
    const Matrix kinv = invert(k0 + delta_k);
    rep.measured = operator_norm(c_block(kinv) - c_block(k0inv));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::singular_matrix || rep.valid) throw;
    // Divergent regime and K actually singular: leave measured unset.
  }
  return rep;
}

}  // namespace nearband
