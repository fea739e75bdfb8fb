#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "nearband/linalg.hpp"
#include "nearband/matrix.hpp"
#include "nearband/partition.hpp"

namespace nearband {

/// Blocks of J^-1 where J is K^-1 with its C block replaced by the best
/// rank-p approximation L, together with the residuals of the two exact
/// identities B = A(L-C)D~ and A - A~ = A(L-C)G~. The nullity theorem
/// forces the B~ block of J^-1 to vanish; its computed norm is reported.
struct LemmaCertificate {
  Matrix A_tilde;
  Matrix G_tilde;
  Matrix D_tilde;
  double residual_B;    // ||B - A(L-C)D~||
  double residual_A;    // ||(A - A~) - A(L-C)G~||
  double B_tilde_norm;  // ||B~||
  bool J_invertible;
  double Jinv_norm;     // ||J^-1||, the natural scale for B_tilde_norm
};

/// First-order supremum estimate 1 / (sigma_n(A) * sigma_{M-n-p}(D)),
/// using the smallest singular value of each block.
struct SharpEstimate {
  double sigma_n_A;
  double sigma_last_D;
  double first_order;
};

struct WorstCaseResult {
  Matrix B0;
  double fixed_point_residual;  // ||f(B0) - B0||
  double achieved_ratio;        // sigma_{p+1}(C(B0)) / ||B0||
  double eq7_value;
  std::size_t iterations;
  bool converged;
  double max_iterate_norm;  // largest ||B_k|| seen; stays <= eps
};

/// Requires ||L - C|| * ||K|| < 1 (the smallness condition); throws
/// lemma-precondition otherwise or when J cannot be inverted.
LemmaCertificate lemma_certificate(const PartitionedSystem& sys);

/// Throws unbounded-ratio when either block is rank deficient at
/// rel_tol (the supremum is infinite to first order).
SharpEstimate sharp_estimate(const Matrix& a, const Matrix& d,
                             double rel_tol = kDefaultRankTol);

/// The exact supremum identity's left-hand side at the system's own B:
///   sigma_n(A) sigma_{p+1}(C) sigma_{M-n-p}(D~)
///   / ( ||B|| (1 + sigma_{p+1}(C) ||G~ L|| / sigma_p(C)) )
/// Always <= 1 up to roundoff; equals 1 at a fixed point of the
/// worst-case map.
double eq7_value(const PartitionedSystem& sys, const LemmaCertificate& cert);

/// Damped fixed-point iteration on B -> A P1 T Q2^-1 D~ (the map from
/// the supremum construction), with up to 8 seeded random restarts.
/// K0 = (A 0; G D) must be invertible and eps below the concrete Lemma
/// threshold ||K0^-1||^2 eps / (1 - ||K0^-1|| eps) < 1 / (2(||K0||+eps)).
WorstCaseResult worst_case_search(const Matrix& a, const Matrix& g,
                                  const Matrix& d, double eps,
                                  std::size_t max_iter, double tol,
                                  std::uint64_t seed);

/// max of sigma_{p+1}(C)/||B|| over seeded Gaussian directions scaled to
/// ||B|| = eps, plus the worst_case_search result (and its direction
/// rescaled to the ball boundary) as candidates. Deterministic per seed.
double empirical_sup(const Matrix& a, const Matrix& g, const Matrix& d,
                     double eps, std::size_t samples, std::uint64_t seed);

namespace detail {

/// Shared, validated view of the unperturbed system K0 = (A 0; G D).
struct K0System {
  Matrix A, G, D;
  BlockPartition part;
  Matrix K0;
  Matrix K0inv;
  double norm_K0;
  double norm_K0inv;
  Matrix A_P1;        // A * (right factor of A's SVD); constant in B
  double sigma_n_A;   // smallest singular value of A
};

K0System make_k0_system(const Matrix& a, const Matrix& g, const Matrix& d);

bool eps_below_lemma_threshold(const K0System& sys, double eps);

/// One evaluation of the worst-case map at a given B.
struct MapEvaluation {
  Matrix fB;
  double norm_B;
  double sigma_p1_C;
  double sigma_p_C;  // 0 when p == 0
  double sigma_last_Dtilde;
  double norm_GtildeL;
  double eq7;
  double ratio;  // sigma_{p+1}(C) / ||B||
};

MapEvaluation evaluate_map(const K0System& sys, const Matrix& b);

/// sigma_{p+1}(C(B)) / ||B|| for an arbitrary perturbation of K0.
double perturbation_ratio(const K0System& sys, const Matrix& b);

/// empirical_sup with an externally computed search candidate, so a
/// caller that already ran worst_case_search does not run it twice.
double empirical_sup_with_candidate(const K0System& sys, double eps,
                                    std::size_t samples, std::uint64_t seed,
                                    const WorstCaseResult& candidate);

}  // namespace detail

}  // namespace nearband
