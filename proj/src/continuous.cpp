#include "nearband/continuous.hpp"

#include <cmath>
#include <string>

#include "nearband/errors.hpp"
#include "nearband/linalg.hpp"
#include "nearband/rng.hpp"

namespace nearband {

std::size_t grid_index(double x, std::size_t n) {
  const double scaled = x * static_cast<double>(n + 1);
  const double rounded = std::floor(scaled + 0.5);
  if (rounded < 0.0) return 0;
  if (rounded > static_cast<double>(n)) return n;
  return static_cast<std::size_t>(rounded);
}

Matrix discretize_schrodinger(const std::vector<double>& v, std::size_t n) {
  if (n < 3)
    throw Error(ErrorCode::invalid_input, "grid size must be at least 3");
  if (v.size() != n)
    throw Error(ErrorCode::invalid_input,
                "potential must have one sample per grid point");
  for (double vi : v)
    if (!std::isfinite(vi))
      throw Error(ErrorCode::invalid_input, "non-finite potential sample");
  const double h = 1.0 / static_cast<double>(n + 1);
  const double inv_h2 = 1.0 / (h * h);
  Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 2.0 * inv_h2 + v[i];
    if (i + 1 < n) {
      m(i, i + 1) = -inv_h2;
      m(i + 1, i) = -inv_h2;
    }
  }
  return m;
}

namespace {

struct Regions {
  std::size_t i0;  // grid index of x0: rows 1..i0 are "x <= x0"
  std::size_t i1;  // grid index of x1: cols 1..i1 are "x' <= x1"
};

Regions make_regions(double x0, double x1, std::size_t n) {
  if (!(x1 > 0.0 && x0 > x1 && x0 < 1.0))
    throw Error(ErrorCode::degenerate_domain,
                "need 0 < x1 < x0 < 1 (x0=" + std::to_string(x0) +
                    ", x1=" + std::to_string(x1) + ")");
  Regions r{grid_index(x0, n), grid_index(x1, n)};
  if (r.i1 < 1 || r.i1 >= r.i0 || r.i0 > n - 1)
    throw Error(ErrorCode::degenerate_domain,
                "x0 or x1 rounds to an empty integration rectangle");
  return r;
}

}  // namespace

std::pair<double, double> green_sigmas(const Matrix& g0, double x0, double x1,
                                       std::size_t n) {
  require_finite(g0, "green_sigmas");
  if (g0.rows() != n || g0.cols() != n)
    throw Error(ErrorCode::invalid_input, "G0 must be N x N");
  const Regions r = make_regions(x0, x1, n);

  // Entries of the matrix inverse are h times the Green's-function
  // samples, so the h^2 quadrature weight cancels against (G/h)^2 and
  // each integral is a plain sum of squared matrix entries.
  double s1 = 0.0;
  for (std::size_t i = 0; i < r.i0; ++i)
    for (std::size_t j = 0; j < r.i1; ++j) s1 += g0(i, j) * g0(i, j);
  double s2 = 0.0;
  for (std::size_t i = r.i0; i < n; ++i)
    for (std::size_t j = r.i1; j < n; ++j) s2 += g0(i, j) * g0(i, j);
  if (s1 == 0.0 || s2 == 0.0)
    throw Error(ErrorCode::degenerate_domain,
                "Green's function vanishes on an integration rectangle");
  return {1.0 / std::sqrt(s1), 1.0 / std::sqrt(s2)};
}

void validate_problem(const ContinuousProblem& prob) {
  const std::size_t n = prob.grid_size;
  if (n < 3) throw Error(ErrorCode::invalid_input, "grid size must be >= 3");
  if (prob.potential.size() != n)
    throw Error(ErrorCode::invalid_input, "potential size mismatch");
  if (prob.kernel.rows() != n || prob.kernel.cols() != n)
    throw Error(ErrorCode::invalid_input, "kernel must be N x N");
  require_finite(prob.kernel, "continuous kernel");
  if (!(prob.x1 > 0.0 && prob.x1 < prob.x0 && prob.x0 < 1.0))
    throw Error(ErrorCode::invalid_input, "need 0 < x1 < x0 < 1");
  if (!(prob.eps >= 0.0) || !std::isfinite(prob.eps))
    throw Error(ErrorCode::invalid_input, "eps must be finite and >= 0");

  const Regions r = make_regions(prob.x0, prob.x1, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const bool piece1 = i < r.i1 && j >= r.i0;
      const bool piece2 = i >= r.i1 && j < r.i0;
      if (!piece1 && !piece2 && prob.kernel(i, j) != 0.0)
        throw Error(ErrorCode::invalid_input,
                    "kernel entry (" + std::to_string(i) + ", " +
                        std::to_string(j) + ") lies outside the admissible "
                        "off-diagonal support");
    }
  const double h = 1.0 / static_cast<double>(n + 1);
  const double norm = operator_norm(h * prob.kernel);
  if (std::abs(norm - 1.0) > 1e-10)
    throw Error(ErrorCode::invalid_input,
                "kernel is not normalized: ||h W|| = " + std::to_string(norm));
}

ContinuousReport verify_continuous_bound(const ContinuousProblem& prob) {
  validate_problem(prob);
  const std::size_t n = prob.grid_size;
  const double h = 1.0 / static_cast<double>(n + 1);

  const Matrix h0 = discretize_schrodinger(prob.potential, n);
  const Matrix g0 = invert(h0);
  const auto [sigma1, sigma2] = green_sigmas(g0, prob.x0, prob.x1, n);

  // Invertibility of H0 + eps W: eps ||H0^-1|| < 1 suffices since
  // ||W|| = 1. The L2 operator norm of H0^-1 is the spectral norm of
  // the matrix inverse (uniform quadrature weights cancel).
  const double norm_g0 = operator_norm(g0);
  if (!(prob.eps * norm_g0 < 1.0))
    throw Error(ErrorCode::invertibility,
                "eps = " + std::to_string(prob.eps) +
                    " >= 1/||H0^-1|| = " + std::to_string(1.0 / norm_g0));

  const Regions r = make_regions(prob.x0, prob.x1, n);
  const Matrix block0 = g0.block(0, r.i1, r.i0, n - r.i1);
  const std::size_t rank_n = numerical_rank(block0);

  const Matrix g = invert(h0 + (prob.eps * h) * prob.kernel);
  const Matrix block = g.block(0, r.i1, r.i0, n - r.i1);
  const auto vals = svd(block).values;
  const double measured = rank_n < vals.size() ? vals[rank_n] : 0.0;

  return {sigma1, sigma2, prob.eps / (sigma1 * sigma2), measured, rank_n};
}

std::vector<double> zero_potential(std::size_t n) {
  return std::vector<double>(n, 0.0);
}

std::vector<double> well_potential(std::size_t n, double depth) {
  std::vector<double> v(n, 0.0);
  const double h = 1.0 / static_cast<double>(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i + 1) * h;
    if (x > 1.0 / 3.0 && x < 2.0 / 3.0) v[i] = -depth;
  }
  return v;
}

Matrix rank1_kernel(std::size_t n, double x0, double x1, std::uint64_t seed,
                    KernelRegion region) {
  if (n < 3) throw Error(ErrorCode::invalid_input, "grid size must be >= 3");
  const Regions r = make_regions(x0, x1, n);
  Rng rng(seed);
  std::vector<double> u(n, 0.0), v(n, 0.0);
  if (region == KernelRegion::rank_increasing) {
    for (std::size_t i = 0; i < r.i1; ++i) u[i] = rng.gaussian();
    for (std::size_t j = r.i0; j < n; ++j) v[j] = rng.gaussian();
  } else {
    for (std::size_t i = r.i1; i < n; ++i) u[i] = rng.gaussian();
    for (std::size_t j = 0; j < r.i0; ++j) v[j] = rng.gaussian();
  }
  double nu = 0.0, nv = 0.0;
  for (double x : u) nu += x * x;
  for (double x : v) nv += x * x;
  nu = std::sqrt(nu);
  nv = std::sqrt(nv);
  if (nu == 0.0 || nv == 0.0)
    throw Error(ErrorCode::generation_failure, "degenerate kernel direction");
  const double h = 1.0 / static_cast<double>(n + 1);
  const double scale = 1.0 / (h * nu * nv);  // makes ||h W|| exactly 1
  Matrix w(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (v[j] != 0.0) w(i, j) = scale * u[i] * v[j];
  }
  return w;
}

}  // namespace nearband
