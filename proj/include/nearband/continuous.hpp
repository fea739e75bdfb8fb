#pragma once

#include <cstdint>
#include <cstddef>
#include <utility>
#include <vector>

#include "nearband/matrix.hpp"

namespace nearband {

/// Discretized operator problem on [0,1]: H0 = -d^2/dx^2 + V(x) on a
/// uniform grid x_i = i h, h = 1/(N+1), with Dirichlet boundaries, plus
/// an integral perturbation eps * W whose kernel vanishes outside
///   { x'' <= x1 < x0 <= x''' }  union  { x''' <= x0, x'' >= x1 }
/// and is normalized to unit L2 operator norm (||h W|| = 1).
struct ContinuousProblem {
  std::size_t grid_size;          // N
  std::vector<double> potential;  // V(x_i), i = 1..N
  double x0;
  double x1;  // 0 < x1 < x0 < 1
  double eps;
  Matrix kernel;  // W(x_i, x_j) samples, N x N
};

struct ContinuousReport {
  double sigma1;
  double sigma2;
  double bound;     // eps / (sigma1 sigma2)
  double measured;  // sigma_{n+1} of the perturbed off-diagonal block
  std::size_t offdiag_rank_n;
};

/// Index of the grid point nearest to x, rounding half up; the regions
/// "x <= x0" and "x' >= x1" are defined by these indices.
std::size_t grid_index(double x, std::size_t n);

/// Tridiagonal (-1, 2, -1)/h^2 + diag(V) stencil.
Matrix discretize_schrodinger(const std::vector<double>& v, std::size_t n);

/// Rectangle-rule quadrature of the two Green's-function restrictions:
///   sigma1 = (int_0^{x0} int_0^{x1} |G0|^2)^(-1/2),
///   sigma2 = (int_{x0}^1 int_{x1}^1 |G0|^2)^(-1/2).
/// g0 is the matrix inverse of the discretized H0. Throws
/// degenerate-domain when rounding empties either rectangle.
std::pair<double, double> green_sigmas(const Matrix& g0, double x0, double x1,
                                       std::size_t n);

/// Checks eps * ||H0^-1|| < 1, inverts the perturbed operator, and
/// reports sigma_{n+1} of its off-diagonal block (rows x <= x0, columns
/// x' >= x1) against the eps/(sigma1 sigma2) bound, where n is the
/// numerical rank of the unperturbed block.
ContinuousReport verify_continuous_bound(const ContinuousProblem& prob);

/// Validates shape, x-range, kernel support, and unit normalization.
/// Throws invalid-input with a description of the first violation.
void validate_problem(const ContinuousProblem& prob);

std::vector<double> zero_potential(std::size_t n);
/// Square well: V = -depth on the middle third of (0,1), 0 elsewhere.
std::vector<double> well_potential(std::size_t n, double depth);

enum class KernelRegion {
  rank_increasing,  // x'' <= x1, x''' >= x0: feeds the bound
  rank_preserving,  // x'' >= x1, x''' <= x0: cannot raise the block rank
};

/// Seeded rank-1 kernel supported on one admissible region, normalized
/// so that ||h W|| = 1.
Matrix rank1_kernel(std::size_t n, double x0, double x1, std::uint64_t seed,
                    KernelRegion region = KernelRegion::rank_increasing);

}  // namespace nearband
