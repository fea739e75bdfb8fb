#pragma once

#include <iosfwd>
#include <string>

#include "nearband/matrix.hpp"

namespace nearband {

enum class MatrixMarketFormat { array, coordinate };

/// Reads a dense `array` or sparse `coordinate` Matrix Market file
/// (real or integer field, general symmetry). Throws missing-file or
/// malformed-matrix-market.
Matrix read_matrix_market(const std::string& path);
Matrix read_matrix_market(std::istream& in, const std::string& name);

/// Writes with 17 significant digits so a read-back is bit-identical.
void write_matrix_market(const Matrix& m, const std::string& path,
                         MatrixMarketFormat format = MatrixMarketFormat::array);
void write_matrix_market(const Matrix& m, std::ostream& out,
                         MatrixMarketFormat format = MatrixMarketFormat::array);

}  // namespace nearband
