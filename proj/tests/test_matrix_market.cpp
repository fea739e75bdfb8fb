#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "nearband/errors.hpp"
#include "nearband/matrix_market.hpp"
#include "test_helpers.hpp"

using namespace nearband;

namespace {

Matrix parse(const std::string& text) {
  std::istringstream in(text);
  return read_matrix_market(in, "test");
}

ErrorCode code_of(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("expected a parse failure");
}

}  // namespace

TEST_CASE("array format reads column-major") {
  Matrix m = parse(
      "%%MatrixMarket matrix array real general\n"
      "% a comment\n"
      "2 2\n"
      "1\n2\n3\n4\n");
  CHECK(m(0, 0) == 1.0);
  CHECK(m(1, 0) == 2.0);
  CHECK(m(0, 1) == 3.0);
  CHECK(m(1, 1) == 4.0);
}

TEST_CASE("coordinate format reads 1-based indices") {
  Matrix m = parse(
      "%%MatrixMarket matrix coordinate real general\n"
      "3 3 2\n"
      "1 3 2.5\n"
      "3 1 -1\n");
  CHECK(m(0, 2) == 2.5);
  CHECK(m(2, 0) == -1.0);
  CHECK(m(1, 1) == 0.0);
}

TEST_CASE("integer field is accepted") {
  Matrix m = parse(
      "%%MatrixMarket matrix array integer general\n"
      "1 2\n"
      "7\n-3\n");
  CHECK(m(0, 0) == 7.0);
  CHECK(m(0, 1) == -3.0);
}

TEST_CASE("malformed inputs carry the documented code") {
  CHECK(code_of("") == ErrorCode::malformed_matrix_market);
  CHECK(code_of("%%NotMM matrix array real general\n1 1\n1\n") ==
        ErrorCode::malformed_matrix_market);
  CHECK(code_of("%%MatrixMarket matrix array complex general\n1 1\n1 0\n") ==
        ErrorCode::malformed_matrix_market);
  CHECK(code_of("%%MatrixMarket matrix array real symmetric\n2 2\n1\n2\n3\n") ==
        ErrorCode::malformed_matrix_market);
  CHECK(code_of("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n") ==
        ErrorCode::malformed_matrix_market);  // truncated
  CHECK(code_of("%%MatrixMarket matrix array real general\n2 2\n1\nbad\n3\n4\n") ==
        ErrorCode::malformed_matrix_market);
  CHECK(code_of("%%MatrixMarket matrix array real general\n0 2\n") ==
        ErrorCode::malformed_matrix_market);
  CHECK(code_of("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 5\n") ==
        ErrorCode::malformed_matrix_market);  // index out of range
  CHECK(code_of("%%MatrixMarket matrix array real general\n1 1\nnan\n") ==
        ErrorCode::malformed_matrix_market);
}

TEST_CASE("missing file carries its own code") {
  try {
    read_matrix_market("/nonexistent/nowhere.mtx");
    FAIL("expected missing-file");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::missing_file);
  }
}

TEST_CASE("write then read is bit-identical in both formats") {
  Matrix m = testutil::random_matrix(42, 5, 3, -1e3, 1e3);
  m(0, 0) = 1.0 / 3.0;
  m(1, 2) = 0.0;  // keep a structural zero for the coordinate variant
  m(4, 2) = 1e-17;

  for (auto fmt : {MatrixMarketFormat::array, MatrixMarketFormat::coordinate}) {
    std::ostringstream out;
    write_matrix_market(m, out, fmt);
    std::istringstream in(out.str());
    Matrix back = read_matrix_market(in, "roundtrip");
    REQUIRE(back.rows() == m.rows());
    REQUIRE(back.cols() == m.cols());
    CHECK(back == m);  // bitwise equality of every entry
  }
}
