#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nearband/errors.hpp"
#include "nearband/matrix.hpp"
#include "test_helpers.hpp"

using nearband::Error;
using nearband::ErrorCode;
using nearband::Matrix;

TEST_CASE("construction and accessors") {
  Matrix m = Matrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  CHECK(m(1, 2) == 6.0);
  CHECK(m.transpose()(2, 1) == 6.0);
  CHECK(Matrix::identity(3)(2, 2) == 1.0);
  CHECK(Matrix::diagonal({3, 2, 1})(1, 1) == 2.0);
  CHECK_THROWS_AS(Matrix::from_rows({{1, 2}, {3}}), Error);
}

TEST_CASE("arithmetic") {
  Matrix a = Matrix::from_rows({{1, 2}, {3, 4}});
  Matrix b = Matrix::from_rows({{5, 6}, {7, 8}});
  CHECK((a + b)(0, 0) == 6.0);
  CHECK((b - a)(1, 1) == 4.0);
  Matrix p = a * b;
  CHECK(p(0, 0) == 19.0);
  CHECK(p(1, 1) == 50.0);
  CHECK((2.0 * a)(1, 0) == 6.0);
  CHECK_THROWS_AS(a * Matrix(3, 3), Error);
  CHECK_THROWS_AS(a + Matrix(3, 2), Error);
}

TEST_CASE("blocks") {
  Matrix m = Matrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  Matrix b = m.block(1, 1, 2, 2);
  CHECK(b(0, 0) == 5.0);
  CHECK(b(1, 1) == 9.0);
  Matrix z(3, 3, 0.0);
  z.set_block(0, 1, b);
  CHECK(z(0, 1) == 5.0);
  CHECK(z(1, 2) == 9.0);
  CHECK(z(2, 0) == 0.0);
  CHECK_THROWS_AS(m.block(2, 2, 2, 2), Error);
}

TEST_CASE("norms and finiteness") {
  Matrix m = Matrix::from_rows({{3, -4}, {0, 0}});
  CHECK(m.frobenius_norm() == doctest::Approx(5.0));
  CHECK(m.max_abs() == 4.0);
  CHECK(m.all_finite());
  m(0, 0) = std::nan("");
  CHECK_FALSE(m.all_finite());
}

TEST_CASE("transpose round trip on random matrices") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Matrix m = testutil::random_matrix(seed, 7, 4);
    CHECK(testutil::max_abs_diff(m.transpose().transpose(), m) == 0.0);
  }
}
