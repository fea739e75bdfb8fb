#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nearband/errors.hpp"
#include "nearband/experiments.hpp"
#include "nearband/linalg.hpp"
#include "nearband/partition.hpp"
#include "nearband/sharp_bound.hpp"
#include "test_helpers.hpp"

using namespace nearband;

TEST_CASE("banded-dominant instances are dominant and banded") {
  Matrix k = generate_instance(3, 20, 1, InstanceKind::banded_dominant);
  for (std::size_t i = 0; i < 20; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < 20; ++j)
      if (j != i) off += std::abs(k(i, j));
    CHECK(k(i, i) >= 1.0 + off);
  }
  CHECK_NOTHROW(check_banded_corollary(k, 1, 1e-8));
}

TEST_CASE("generators are deterministic per seed") {
  for (auto kind : {InstanceKind::banded_dominant, InstanceKind::banded_random,
                    InstanceKind::integer_exact}) {
    CHECK(generate_instance(11, 12, 2, kind) == generate_instance(11, 12, 2, kind));
  }
  CHECK_FALSE(generate_instance(11, 12, 2, InstanceKind::banded_dominant) ==
              generate_instance(12, 12, 2, InstanceKind::banded_dominant));
}

TEST_CASE("integer-exact instances pass the nullity check") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Matrix k = generate_instance(seed, 8, 2, InstanceKind::integer_exact);
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j)
        CHECK(k(i, j) == std::floor(k(i, j)));
    auto report = check_nullity_theorem(partition_system(k, 3, 2), 1e-8);
    CHECK(report.theorem_holds);
  }
}

TEST_CASE("banded-random retry exhaustion raises generation-failure") {
  try {
    detail::generate_banded_random(1, 6, 1, 0);
    FAIL("expected generation-failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::generation_failure);
  }
  CHECK_NOTHROW(detail::generate_banded_random(1, 6, 1, 16));
}

TEST_CASE("instance kind parsing") {
  CHECK(parse_instance_kind("banded-dominant") == InstanceKind::banded_dominant);
  CHECK(parse_instance_kind("integer-exact") == InstanceKind::integer_exact);
  CHECK_THROWS_AS(parse_instance_kind("bogus"), Error);
}

TEST_CASE("run_sweep validates its config") {
  SweepConfig cfg;
  cfg.eps_list = {};
  try {
    run_sweep(cfg);
    FAIL("expected invalid-config");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_config);
  }
  cfg.eps_list = {1e-3, 1e-2};  // not descending
  CHECK_THROWS_AS(run_sweep(cfg), Error);
  cfg.eps_list = {1e-2};
  cfg.k = 1;
  CHECK_THROWS_AS(run_sweep(cfg), Error);  // k must be 0 here
  cfg.k = 0;
  cfg.n = 19;
  cfg.p = 1;  // n + p = M
  CHECK_THROWS_AS(run_sweep(cfg), Error);
}

TEST_CASE("run_sweep on the reference instance shows the first-order slope") {
  SweepConfig cfg;
  cfg.seed = 12;
  cfg.M = 20;
  cfg.p = 1;
  cfg.n = 10;
  cfg.eps_list = {1e-2, 1e-3, 1e-4};
  cfg.samples_per_eps = 8;
  auto res = run_sweep(cfg);
  REQUIRE(res.rows.size() == 3);
  CHECK(res.skipped.empty());
  CHECK(res.fit_valid);
  CHECK(res.fit_slope >= 0.9);
  for (const auto& row : res.rows) {
    CHECK(row.ratio > 0.0);
    CHECK(row.worst_case_converged);
    CHECK(row.analytic ==
          doctest::Approx(1.0 / (res.sigma_n_A * res.sigma_last_D)));
    CHECK(std::abs(row.ratio - 1.0) <= res.fit_constant * row.eps * (1 + 1e-9));
  }
  // Smallest eps lands within 1% of the analytic limit.
  CHECK(std::abs(res.rows.back().ratio - 1.0) <= 0.01);
}

TEST_CASE("run_sweep flags eps above the lemma threshold") {
  SweepConfig cfg;
  cfg.seed = 12;
  cfg.M = 12;
  cfg.p = 1;
  cfg.n = 6;
  cfg.eps_list = {1e3, 1e-3, 1e-4, 1e-5};
  cfg.samples_per_eps = 4;
  auto res = run_sweep(cfg);
  REQUIRE(res.skipped.size() == 1);
  CHECK(res.skipped[0].eps == 1e3);
  CHECK(res.rows.size() == 3);
}

TEST_CASE("sweep analytic column equals sharp_estimate of the instance blocks") {
  SweepConfig cfg;
  cfg.seed = 9;
  cfg.M = 14;
  cfg.p = 2;
  cfg.n = 7;
  cfg.eps_list = {1e-3};
  cfg.samples_per_eps = 4;
  auto res = run_sweep(cfg);
  Matrix k0 = generate_instance(9, 14, 2, InstanceKind::banded_dominant);
  auto est = sharp_estimate(k0.block(0, 0, 7, 9), k0.block(7, 9, 7, 5));
  REQUIRE(res.rows.size() == 1);
  CHECK(res.rows[0].analytic == doctest::Approx(est.first_order).epsilon(1e-14));
}

TEST_CASE("sweep CSV output is byte-identical across runs") {
  SweepConfig cfg;
  cfg.seed = 4;
  cfg.M = 12;
  cfg.p = 1;
  cfg.n = 6;
  cfg.eps_list = {1e-2, 1e-3};
  cfg.samples_per_eps = 4;
  const std::string csv1 = to_csv(run_sweep(cfg));
  const std::string csv2 = to_csv(run_sweep(cfg));
  CHECK(csv1 == csv2);
  CHECK(csv1.rfind("eps,empirical_sup,analytic,ratio,converged\n", 0) == 0);
  CHECK(std::count(csv1.begin(), csv1.end(), '\n') == 3);
}

TEST_CASE("every sampled ratio stays below the row's empirical sup") {
  // Soundness by construction: re-draw the same directions and compare.
  SweepConfig cfg;
  cfg.seed = 21;
  cfg.M = 12;
  cfg.p = 1;
  cfg.n = 6;
  cfg.eps_list = {1e-3};
  cfg.samples_per_eps = 6;
  auto res = run_sweep(cfg);
  REQUIRE(res.rows.size() == 1);
  Matrix k0 = generate_instance(21, 12, 1, InstanceKind::banded_dominant);
  auto sys = detail::make_k0_system(k0.block(0, 0, 6, 7),
                                    k0.block(6, 0, 6, 7), k0.block(6, 7, 6, 5));
  for (std::uint64_t i = 0; i < 6; ++i) {
    Rng rng = Rng::substream(cfg.seed + 0, i);
    Matrix b(6, 5);
    for (std::size_t r = 0; r < 6; ++r)
      for (std::size_t c = 0; c < 5; ++c) b(r, c) = rng.gaussian();
    b = (1e-3 / operator_norm(b)) * b;
    CHECK(detail::perturbation_ratio(sys, b) <= res.rows[0].empirical_sup);
  }
}

TEST_CASE("rank-k sweep with exact rank-k B reproduces the exact theorem") {
  // k = rank(B) exactly, no noise: sigma_{p+k+1}(C) is roundoff relative
  // to sigma_1(C).
  const std::size_t m = 12, n = 6, p = 1, k = 2;
  Matrix kmat = generate_nullity_instance(33, m, n, p, k);
  Matrix kinv = invert(kmat);
  const auto vals = svd(kinv.block(0, n, n + p, m - n)).values;
  CHECK(vals[p + k] / vals[0] <= 1e-10);
}

TEST_CASE("rank-k sweep produces finite positive ratios") {
  SweepConfig cfg;
  cfg.seed = 5;
  cfg.M = 14;
  cfg.p = 1;
  cfg.n = 7;
  cfg.k = 1;
  cfg.eps_list = {1e-3};
  cfg.samples_per_eps = 25;
  auto res = rank_k_sweep(cfg);
  REQUIRE(res.rows.size() == 25);
  for (const auto& row : res.rows) {
    CHECK(std::isfinite(row.ratio));
    CHECK(row.ratio > 0.0);
    REQUIRE(row.sigma_B.size() == 1);
    CHECK(row.sigma_B[0] > 0.0);
  }
  const std::string csv = to_csv(res, cfg.k);
  CHECK(csv.rfind("eps,sample,ratio,sigma_n_A,sigma_last_D,sigma_B_1\n", 0) == 0);
}

TEST_CASE("rank-k sweep with k = 0 delegates to run_sweep semantics") {
  SweepConfig cfg;
  cfg.seed = 12;
  cfg.M = 20;
  cfg.p = 1;
  cfg.n = 10;
  cfg.eps_list = {1e-3, 1e-4};
  cfg.samples_per_eps = 4;
  auto rk = rank_k_sweep(cfg);
  auto sw = run_sweep(cfg);
  REQUIRE(rk.rows.size() == sw.rows.size());
  for (std::size_t i = 0; i < rk.rows.size(); ++i) {
    CHECK(rk.rows[i].ratio == sw.rows[i].empirical_sup);
    // Consistency with the sharp estimate within the fitted constant.
    CHECK(std::abs(rk.rows[i].ratio * sw.sigma_n_A * sw.sigma_last_D - 1.0) <=
          sw.fit_constant * rk.rows[i].eps * (1 + 1e-9));
  }
}

TEST_CASE("rank-k sweep validates k against the block shape") {
  SweepConfig cfg;
  cfg.seed = 1;
  cfg.M = 8;
  cfg.p = 1;
  cfg.n = 4;
  cfg.k = 3;  // min(n, M-n-p) = 3: sigma_{k+1}(B) would not exist
  cfg.eps_list = {1e-3};
  try {
    rank_k_sweep(cfg);
    FAIL("expected invalid-config");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_config);
  }
}
