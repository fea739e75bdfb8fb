#include "nearband/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "nearband/errors.hpp"
#include "nearband/linalg.hpp"
#include "nearband/partition.hpp"
#include "nearband/rng.hpp"
#include "nearband/sharp_bound.hpp"

namespace nearband {

InstanceKind parse_instance_kind(const std::string& tag) {
  if (tag == "banded-dominant") return InstanceKind::banded_dominant;
  if (tag == "banded-random") return InstanceKind::banded_random;
  if (tag == "integer-exact") return InstanceKind::integer_exact;
  throw Error(ErrorCode::invalid_argument, "unknown instance kind '" + tag + "'");
}

namespace {

void check_band_params(std::size_t m, std::size_t p) {
  if (m < 2 || p > m - 2)
    throw Error(ErrorCode::invalid_argument,
                "need M >= 2 and bandwidth p <= M - 2");
}

Matrix banded_dominant(Rng& rng, std::size_t m, std::size_t p) {
  Matrix k(m, m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t lo = i > p ? i - p : 0;
    const std::size_t hi = std::min(m - 1, i + p);
    for (std::size_t j = lo; j <= hi; ++j)
      if (j != i) k(i, j) = rng.uniform(-1.0, 1.0);
  }
  for (std::size_t i = 0; i < m; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) row_sum += std::abs(k(i, j));
    k(i, i) = 1.0 + row_sum + rng.uniform();
  }
  return k;
}

Matrix integer_exact(Rng& rng, std::size_t m, std::size_t p) {
  Matrix k(m, m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t lo = i > p ? i - p : 0;
    const std::size_t hi = std::min(m - 1, i + p);
    for (std::size_t j = lo; j <= hi; ++j)
      if (j != i) k(i, j) = static_cast<double>(rng.uniform_int(-2, 2));
  }
  for (std::size_t i = 0; i < m; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) row_sum += std::abs(k(i, j));
    k(i, i) = 1.0 + row_sum + static_cast<double>(rng.uniform_int(0, 2));
  }
  return k;
}

}  // namespace

namespace detail {

Matrix generate_banded_random(std::uint64_t seed, std::size_t m,
                              std::size_t p, std::size_t max_attempts) {
  check_band_params(m, p);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng = Rng::substream(seed, attempt);
    Matrix k(m, m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t lo = i > p ? i - p : 0;
      const std::size_t hi = std::min(m - 1, i + p);
      for (std::size_t j = lo; j <= hi; ++j) k(i, j) = rng.uniform(-1.0, 1.0);
    }
    try {
      invert(k);
      return k;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::singular_matrix) throw;
    }
  }
  throw Error(ErrorCode::generation_failure,
              "no invertible banded-random draw in " +
                  std::to_string(max_attempts) + " attempts");
}

}  // namespace detail

Matrix generate_instance(std::uint64_t seed, std::size_t m, std::size_t p,
                         InstanceKind kind) {
  check_band_params(m, p);
  switch (kind) {
    case InstanceKind::banded_dominant: {
      Rng rng = Rng::substream(seed, 0xd0);
      return banded_dominant(rng, m, p);
    }
    case InstanceKind::banded_random:
      return detail::generate_banded_random(seed, m, p, 16);
    case InstanceKind::integer_exact: {
      Rng rng = Rng::substream(seed, 0x1e);
      return integer_exact(rng, m, p);
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown instance kind");
}

Matrix generate_nullity_instance(std::uint64_t seed, std::size_t m,
                                 std::size_t n, std::size_t p, std::size_t r) {
  const BlockPartition part(m, n, p);  // validates (n, p)
  const std::size_t right = part.right_cols();
  if (r > std::min(n, right))
    throw Error(ErrorCode::invalid_argument,
                "rank r must be <= min(n, M - n - p)");
  Rng rng = Rng::substream(seed, 0xb0);

  Matrix k(m, m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t lo = i > p ? i - p : 0;
    const std::size_t hi = std::min(m - 1, i + p);
    for (std::size_t j = lo; j <= hi; ++j)
      if (j != i) k(i, j) = static_cast<double>(rng.uniform_int(-2, 2));
  }

  if (r > 0) {
    // X = (I; R) and Y = (I; S) have full column rank, so X Y^T has rank
    // exactly r; all entries are small integers, exact in doubles.
    Matrix x(n, r, 0.0), y(right, r, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < r; ++j)
        x(i, j) = i < r ? (i == j ? 1.0 : 0.0)
                        : static_cast<double>(rng.uniform_int(-2, 2));
    for (std::size_t i = 0; i < right; ++i)
      for (std::size_t j = 0; j < r; ++j)
        y(i, j) = i < r ? (i == j ? 1.0 : 0.0)
                        : static_cast<double>(rng.uniform_int(-2, 2));
    k.set_block(0, part.left_cols(), x * y.transpose());
  }

  // Dominate the diagonal after placing B so the matrix stays invertible.
  for (std::size_t i = 0; i < m; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) row_sum += std::abs(k(i, j));
    k(i, i) = 1.0 + row_sum + static_cast<double>(rng.uniform_int(0, 2));
  }
  return k;
}

namespace {

void validate_config(const SweepConfig& config) {
  if (config.eps_list.empty())
    throw Error(ErrorCode::invalid_config, "eps_list must not be empty");
  for (double e : config.eps_list)
    if (!(e > 0.0) || !std::isfinite(e))
      throw Error(ErrorCode::invalid_config, "eps values must be positive");
  for (std::size_t i = 1; i < config.eps_list.size(); ++i)
    if (!(config.eps_list[i] < config.eps_list[i - 1]))
      throw Error(ErrorCode::invalid_config,
                  "eps_list must be strictly descending");
  if (config.samples_per_eps == 0)
    throw Error(ErrorCode::invalid_config, "samples_per_eps must be >= 1");
  try {
    (void)BlockPartition(config.M, config.n, config.p);
  } catch (const Error&) {
    throw Error(ErrorCode::invalid_config,
                "(M, n, p) is not an admissible partition");
  }
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config) {
  validate_config(config);
  if (config.k != 0)
    throw Error(ErrorCode::invalid_config,
                "run_sweep requires k = 0; use rank_k_sweep");

  const Matrix k0 = generate_instance(config.seed, config.M, config.p,
                                      InstanceKind::banded_dominant);
  const BlockPartition part(config.M, config.n, config.p);
  const Matrix a = k0.block(0, 0, part.top_rows(), part.left_cols());
  const Matrix g = k0.block(part.split, 0, part.bottom_rows(), part.left_cols());
  const Matrix d = k0.block(part.split, part.left_cols(), part.bottom_rows(),
                            part.right_cols());

  const detail::K0System sys = detail::make_k0_system(a, g, d);
  const SharpEstimate sharp = sharp_estimate(a, d);

  SweepResult result;
  result.sigma_n_A = sharp.sigma_n_A;
  result.sigma_last_D = sharp.sigma_last_D;

  for (std::size_t i = 0; i < config.eps_list.size(); ++i) {
    const double eps = config.eps_list[i];
    try {
      const WorstCaseResult wc = worst_case_search(
          a, g, d, eps, 200, 1e-6, config.seed ^ (0x5eedULL + i));
      const double sup = detail::empirical_sup_with_candidate(
          sys, eps, config.samples_per_eps, config.seed + i, wc);
      result.rows.push_back(
          {eps, sup, sharp.first_order, sup / sharp.first_order, wc.converged});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::lemma_precondition) throw;
      result.skipped.push_back({eps, e.what()});
    }
  }

  // Fit log|ratio - 1| = slope * log eps + const over usable rows.
  std::vector<std::pair<double, double>> pts;
  double c_max = 0.0;
  for (const SweepRow& row : result.rows) {
    const double dev = std::abs(row.ratio - 1.0);
    c_max = std::max(c_max, dev / row.eps);
    if (dev > 0.0) pts.push_back({std::log(row.eps), std::log(dev)});
  }
  result.fit_constant = c_max;
  if (pts.size() >= 3) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double npts = static_cast<double>(pts.size());
    const double denom = npts * sxx - sx * sx;
    if (denom > 0.0) {
      result.fit_slope = (npts * sxy - sx * sy) / denom;
      result.fit_valid = true;
    }
  }
  return result;
}

RankKResult rank_k_sweep(const SweepConfig& config) {
  validate_config(config);
  if (config.k == 0) {
    // Degenerate call: sigma_{p+1}(C)/sigma_1(B) is exactly the main
    // study's ratio, so delegate and reshape.
    const SweepResult sweep = run_sweep(config);
    RankKResult result;
    for (const SweepRow& row : sweep.rows)
      result.rows.push_back({row.eps, 0, row.empirical_sup, sweep.sigma_n_A,
                             sweep.sigma_last_D, {}});
    result.skipped = sweep.skipped;
    return result;
  }

  const BlockPartition part(config.M, config.n, config.p);
  const std::size_t right = part.right_cols();
  if (config.k + 1 > std::min(config.n, right))
    throw Error(ErrorCode::invalid_config,
                "need k + 1 <= min(n, M - n - p) so sigma_{k+1}(B) exists");

  const Matrix k0 = generate_instance(config.seed, config.M, config.p,
                                      InstanceKind::banded_dominant);
  const Matrix a = k0.block(0, 0, part.top_rows(), part.left_cols());
  const Matrix g = k0.block(part.split, 0, part.bottom_rows(), part.left_cols());
  const Matrix d = k0.block(part.split, part.left_cols(), part.bottom_rows(),
                            right);
  const detail::K0System sys = detail::make_k0_system(a, g, d);
  const SharpEstimate sharp = sharp_estimate(a, d);

  // Signal scale for the exact rank-k part: well inside the radius that
  // keeps K0 + dK invertible, leaving room for eps of noise.
  const double signal_norm = 0.4 / sys.norm_K0inv;

  RankKResult result;
  for (std::size_t ei = 0; ei < config.eps_list.size(); ++ei) {
    const double eps = config.eps_list[ei];
    if (eps >= signal_norm) {
      result.skipped.push_back(
          {eps, "noise norm reaches the invertibility margin"});
      continue;
    }
    for (std::size_t s = 0; s < config.samples_per_eps; ++s) {
      Rng rng = Rng::substream(config.seed, ei * 7919 + s);
      Matrix xl(config.n, config.k), yr(right, config.k);
      for (std::size_t i = 0; i < config.n; ++i)
        for (std::size_t j = 0; j < config.k; ++j) xl(i, j) = rng.gaussian();
      for (std::size_t i = 0; i < right; ++i)
        for (std::size_t j = 0; j < config.k; ++j) yr(i, j) = rng.gaussian();
      Matrix b = xl * yr.transpose();
      b = (signal_norm / operator_norm(b)) * b;

      Matrix noise(config.n, right);
      for (std::size_t i = 0; i < config.n; ++i)
        for (std::size_t j = 0; j < right; ++j) noise(i, j) = rng.gaussian();
      b = b + (eps / operator_norm(noise)) * noise;

      const auto vals_b = svd(b).values;
      const Matrix kinv = invert(sys.K0 + embed_b_block(b, part));
      const Matrix c =
          kinv.block(0, part.split, part.left_cols(), part.bottom_rows());
      const auto vals_c = svd(c).values;

      const std::size_t idx_c = part.offset + config.k;  // sigma_{p+k+1}
      RankKRow row;
      row.eps = eps;
      row.sample = s;
      row.ratio = (idx_c < vals_c.size() ? vals_c[idx_c] : 0.0) /
                  vals_b[config.k];
      row.sigma_n_A = sharp.sigma_n_A;
      row.sigma_last_D = sharp.sigma_last_D;
      row.sigma_B.assign(vals_b.begin(),
                         vals_b.begin() + static_cast<std::ptrdiff_t>(config.k));
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

std::string to_csv(const SweepResult& result) {
  std::string out = "eps,empirical_sup,analytic,ratio,converged\n";
  for (const SweepRow& row : result.rows) {
    out += format_g17(row.eps) + "," + format_g17(row.empirical_sup) + "," +
           format_g17(row.analytic) + "," + format_g17(row.ratio) + "," +
           (row.worst_case_converged ? "true" : "false") + "\n";
  }
  return out;
}

std::string to_csv(const RankKResult& result, std::size_t k) {
  std::string out = "eps,sample,ratio,sigma_n_A,sigma_last_D";
  for (std::size_t j = 1; j <= k; ++j)
    out += ",sigma_B_" + std::to_string(j);
  out += "\n";
  for (const RankKRow& row : result.rows) {
    out += format_g17(row.eps) + "," + std::to_string(row.sample) + "," +
           format_g17(row.ratio) + "," + format_g17(row.sigma_n_A) + "," +
           format_g17(row.sigma_last_D);
    for (double s : row.sigma_B) out += "," + format_g17(s);
    out += "\n";
  }
  return out;
}

}  // namespace nearband
