#pragma once

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

#include "nearband/matrix.hpp"

namespace nearband {

enum class InstanceKind { banded_dominant, banded_random, integer_exact };

InstanceKind parse_instance_kind(const std::string& tag);

/// Deterministic invertible M x M banded matrix of bandwidth p.
/// banded-dominant and integer-exact are diagonally dominant by
/// construction; banded-random retries up to 16 draws before giving up
/// with generation-failure.
Matrix generate_instance(std::uint64_t seed, std::size_t m, std::size_t p,
                         InstanceKind kind);

/// Integer matrix for exact-rank nullity tests: a banded integer-exact
/// base with an integer rank-r product X Y^T placed into the B block
/// (rows < n, cols >= n+p) and the diagonal re-dominated afterwards.
Matrix generate_nullity_instance(std::uint64_t seed, std::size_t m,
                                 std::size_t n, std::size_t p, std::size_t r);

struct SweepConfig {
  std::uint64_t seed = 0;
  std::size_t M = 20;
  std::size_t p = 1;
  std::size_t n = 10;
  std::vector<double> eps_list;  // strictly descending, positive
  std::size_t samples_per_eps = 16;
  std::size_t k = 0;  // perturbation rank for the rank-k study
};

struct SweepRow {
  double eps;
  double empirical_sup;
  double analytic;  // sharp_estimate for the instance
  double ratio;     // empirical_sup / analytic
  bool worst_case_converged;
};

struct SkippedEps {
  double eps;
  std::string reason;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SkippedEps> skipped;  // eps above the Lemma threshold
  double sigma_n_A = 0.0;
  double sigma_last_D = 0.0;
  // least-squares fit of log|ratio - 1| against log eps; needs >= 3 rows
  double fit_slope = 0.0;
  double fit_constant = 0.0;  // c with |ratio - 1| <= c * eps on all rows
  bool fit_valid = false;
};

/// One row per eps: empirical_sup against the sharp first-order
/// estimate on a fixed banded-dominant instance.
SweepResult run_sweep(const SweepConfig& config);

struct RankKRow {
  double eps;
  std::size_t sample;
  double ratio;  // sigma_{p+k+1}(C) / sigma_{k+1}(B)
  double sigma_n_A;
  double sigma_last_D;
  std::vector<double> sigma_B;  // first k singular values of B
};

struct RankKResult {
  std::vector<RankKRow> rows;
  std::vector<SkippedEps> skipped;
};

/// Exploratory study for rank-k perturbations: B = (exact rank-k) +
/// (noise of norm eps). No bound is asserted; the table records the
/// quantities any future estimate could depend on. k = 0 delegates to
/// run_sweep semantics.
RankKResult rank_k_sweep(const SweepConfig& config);

/// header: eps,empirical_sup,analytic,ratio,converged
std::string to_csv(const SweepResult& result);
std::string to_csv(const RankKResult& result, std::size_t k);

namespace detail {
/// banded-random draw with an explicit retry budget (the public entry
/// point uses 16); exposed so the exhaustion path is testable.
Matrix generate_banded_random(std::uint64_t seed, std::size_t m,
                              std::size_t p, std::size_t max_attempts);
}  // namespace detail

}  // namespace nearband
