#include "nearband/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nearband/errors.hpp"

namespace nearband {

void require_finite(const Matrix& x, const char* where) {
  if (!x.all_finite())
    throw Error(ErrorCode::invalid_input,
                std::string("non-finite entry passed to ") + where);
}

Matrix SvdFactors::reconstruct() const { return reconstruct_truncated(values.size()); }

Matrix SvdFactors::reconstruct_truncated(std::size_t keep) const {
  const std::size_t k = std::min(keep, values.size());
  Matrix r(left.rows(), right.rows(), 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    const double s = values[c];
    if (s == 0.0) continue;
    for (std::size_t i = 0; i < left.rows(); ++i) {
      const double us = left(i, c) * s;
      for (std::size_t j = 0; j < right.rows(); ++j)
        r(i, j) += us * right(j, c);
    }
  }
  return r;
}

Matrix SvdFactors::reconstruct_tail(std::size_t skip) const {
  Matrix r(left.rows(), right.rows(), 0.0);
  for (std::size_t c = skip; c < values.size(); ++c) {
    const double s = values[c];
    if (s == 0.0) continue;
    for (std::size_t i = 0; i < left.rows(); ++i) {
      const double us = left(i, c) * s;
      for (std::size_t j = 0; j < right.rows(); ++j)
        r(i, j) += us * right(j, c);
    }
  }
  return r;
}

namespace {

// One-sided Jacobi on a tall (rows >= cols) matrix: rotate column pairs
// of the work matrix until all pairs are orthogonal, accumulating the
// rotations into V. Column norms then give the singular values.
struct JacobiResult {
  Matrix w;  // rows x cols, columns mutually orthogonal
  Matrix v;  // cols x cols, orthogonal
};

JacobiResult one_sided_jacobi(const Matrix& x) {
  const std::size_t m = x.rows();
  const std::size_t n = x.cols();
  Matrix w = x;
  Matrix v = Matrix::identity(n);
  constexpr double kOrthTol = 1e-14;
  constexpr int kMaxSweeps = 64;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double aii = 0.0, ajj = 0.0, aij = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          const double wi = w(k, i), wj = w(k, j);
          aii += wi * wi;
          ajj += wj * wj;
          aij += wi * wj;
        }
        if (aii == 0.0 || ajj == 0.0) continue;
        if (std::abs(aij) <= kOrthTol * std::sqrt(aii * ajj)) continue;
        rotated = true;
        const double zeta = (ajj - aii) / (2.0 * aij);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        for (std::size_t k = 0; k < m; ++k) {
          const double wi = w(k, i), wj = w(k, j);
          w(k, i) = cs * wi - sn * wj;
          w(k, j) = sn * wi + cs * wj;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vi = v(k, i), vj = v(k, j);
          v(k, i) = cs * vi - sn * vj;
          v(k, j) = sn * vi + cs * vj;
        }
      }
    }
    if (!rotated) break;
  }
  return {std::move(w), std::move(v)};
}

// Fills a zero column of U with a unit vector orthogonal to all other
// columns. Standard basis candidates are projected out (twice, for
// orthogonality at roundoff level) and the best survivor wins; a fixed
// scan order keeps the result deterministic.
void complete_column(Matrix& u, std::size_t col) {
  const std::size_t m = u.rows();
  const std::size_t n = u.cols();
  std::vector<double> best;
  double best_norm = -1.0;
  std::vector<double> e(m);
  for (std::size_t cand = 0; cand < m; ++cand) {
    std::fill(e.begin(), e.end(), 0.0);
    e[cand] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t c = 0; c < n; ++c) {
        if (c == col) continue;
        double dot = 0.0;
        for (std::size_t k = 0; k < m; ++k) dot += u(k, c) * e[k];
        if (dot == 0.0) continue;
        for (std::size_t k = 0; k < m; ++k) e[k] -= dot * u(k, c);
      }
    }
    double norm = 0.0;
    for (double ek : e) norm += ek * ek;
    norm = std::sqrt(norm);
    if (norm > best_norm) {
      best_norm = norm;
      best = e;
    }
    if (best_norm > 0.70710678) break;
  }
  if (best_norm <= 1e-6)
    throw Error(ErrorCode::invalid_input, "cannot complete orthonormal basis");
  for (std::size_t k = 0; k < m; ++k) u(k, col) = best[k] / best_norm;
}

SvdFactors svd_tall(const Matrix& x) {
  const std::size_t m = x.rows();
  const std::size_t n = x.cols();
  auto [w, v] = one_sided_jacobi(x);

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += w(k, j) * w(k, j);
    sigma[j] = std::sqrt(s);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sigma[a] > sigma[b];
  });

  SvdFactors f;
  f.values.resize(n);
  f.left = Matrix(m, n);
  f.right = Matrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t src = order[c];
    f.values[c] = sigma[src];
    for (std::size_t k = 0; k < n; ++k) f.right(k, c) = v(k, src);
    if (sigma[src] > 0.0) {
      for (std::size_t k = 0; k < m; ++k) f.left(k, c) = w(k, src) / sigma[src];
    }
  }
  for (std::size_t c = 0; c < n; ++c)
    if (f.values[c] == 0.0) complete_column(f.left, c);

  // Sign convention: first nonzero entry of each left vector >= 0.
  for (std::size_t c = 0; c < n; ++c) {
    double lead = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      if (f.left(k, c) != 0.0) {
        lead = f.left(k, c);
        break;
      }
    }
    if (lead < 0.0) {
      for (std::size_t k = 0; k < m; ++k) f.left(k, c) = -f.left(k, c);
      for (std::size_t k = 0; k < n; ++k) f.right(k, c) = -f.right(k, c);
    }
  }
  return f;
}

}  // namespace

SvdFactors svd(const Matrix& x) {
  require_finite(x, "svd");
  if (x.empty()) throw Error(ErrorCode::invalid_input, "empty matrix in svd");
  if (x.rows() >= x.cols()) return svd_tall(x);
  SvdFactors t = svd_tall(x.transpose());
  SvdFactors f;
  f.left = std::move(t.right);
  f.right = std::move(t.left);
  f.values = std::move(t.values);
  // Re-apply the sign convention: it is pinned to the *left* factor.
  for (std::size_t c = 0; c < f.values.size(); ++c) {
    double lead = 0.0;
    for (std::size_t k = 0; k < f.left.rows(); ++k) {
      if (f.left(k, c) != 0.0) {
        lead = f.left(k, c);
        break;
      }
    }
    if (lead < 0.0) {
      for (std::size_t k = 0; k < f.left.rows(); ++k)
        f.left(k, c) = -f.left(k, c);
      for (std::size_t k = 0; k < f.right.rows(); ++k)
        f.right(k, c) = -f.right(k, c);
    }
  }
  return f;
}

double operator_norm(const Matrix& x) {
  require_finite(x, "operator_norm");
  if (x.empty()) return 0.0;
  return svd(x).values.front();
}

namespace {

// Plain Gauss-Jordan inverse; pivot magnitudes are recorded so the
// caller can decide whether a singular-value check is warranted.
bool gauss_jordan(Matrix a, Matrix& inv, double pivot_floor) {
  const std::size_t n = a.rows();
  inv = Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    const double p = a(piv, col);
    if (std::abs(p) <= pivot_floor) return false;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(col, j), a(piv, j));
        std::swap(inv(col, j), inv(piv, j));
      }
    }
    const double scale = 1.0 / a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= scale;
      inv(col, j) *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return true;
}

}  // namespace

Matrix invert(const Matrix& x) {
  require_finite(x, "invert");
  if (x.rows() != x.cols() || x.empty())
    throw Error(ErrorCode::invalid_input, "invert requires a square matrix");

  // A suspiciously small pivot triggers the authoritative singular-value
  // test; well-conditioned matrices skip the SVD entirely.
  const double scale = x.max_abs();
  Matrix inv;
  const bool clean = scale > 0.0 && gauss_jordan(x, inv, 1e-9 * scale);
  if (!clean) {
    const auto vals = svd(x).values;
    if (vals.front() == 0.0 || vals.back() < 1e-13 * vals.front())
      throw Error(ErrorCode::singular_matrix,
                  "matrix is singular to working tolerance");
    if (!gauss_jordan(x, inv, 0.0))
      throw Error(ErrorCode::singular_matrix, "exactly zero pivot");
  }
  return inv;
}

std::size_t nullity(const Matrix& x, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw Error(ErrorCode::invalid_argument, "rel_tol must be in (0, 1)");
  const auto vals = svd(x).values;
  const double s1 = vals.front();
  if (s1 == 0.0) return vals.size();
  std::size_t count = 0;
  for (double s : vals)
    if (s <= rel_tol * s1) ++count;
  return count;
}

std::size_t numerical_rank(const Matrix& x, double rel_tol) {
  return std::min(x.rows(), x.cols()) - nullity(x, rel_tol);
}

}  // namespace nearband
