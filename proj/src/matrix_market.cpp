#include "nearband/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nearband/errors.hpp"
#include "nearband/linalg.hpp"

namespace nearband {

namespace {

[[noreturn]] void malformed(const std::string& name, const std::string& why) {
  throw Error(ErrorCode::malformed_matrix_market, name + ": " + why);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '%') continue;
    return true;
  }
  return false;
}

}  // namespace

Matrix read_matrix_market(std::istream& in, const std::string& name) {
  std::string header;
  if (!std::getline(in, header)) malformed(name, "empty file");
  std::istringstream hs(header);
  std::string banner, object, format, field, symmetry;
  hs >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket") malformed(name, "missing %%MatrixMarket banner");
  if (lower(object) != "matrix") malformed(name, "object must be 'matrix'");
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (format != "array" && format != "coordinate")
    malformed(name, "format must be 'array' or 'coordinate'");
  if (field != "real" && field != "integer")
    malformed(name, "field must be 'real' or 'integer'");
  if (symmetry != "general")
    malformed(name, "only 'general' symmetry is supported");

  std::string line;
  if (!next_content_line(in, line)) malformed(name, "missing size line");
  std::istringstream ss(line);
  long rows = 0, cols = 0, nnz = 0;
  if (!(ss >> rows >> cols)) malformed(name, "bad size line");
  if (rows <= 0 || cols <= 0) malformed(name, "non-positive dimensions");

  Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), 0.0);

  if (format == "array") {
    // Dense entries are stored column-major, one value per line, but any
    // whitespace separation is accepted.
    std::string extra;
    if (ss >> extra) malformed(name, "trailing tokens on size line");
    for (long j = 0; j < cols; ++j) {
      for (long i = 0; i < rows; ++i) {
        double v;
        if (!(in >> v)) {
          if (in.eof()) malformed(name, "fewer entries than rows*cols");
          std::string junk;
          in.clear();
          in >> junk;
          malformed(name, "non-numeric entry '" + junk + "'");
        }
        if (!std::isfinite(v)) malformed(name, "non-finite entry");
        m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
      }
    }
  } else {
    if (!(ss >> nnz) || nnz < 0) malformed(name, "bad nonzero count");
    for (long e = 0; e < nnz; ++e) {
      if (!next_content_line(in, line))
        malformed(name, "fewer entries than declared");
      std::istringstream es(line);
      long i, j;
      double v;
      if (!(es >> i >> j >> v)) malformed(name, "bad coordinate entry");
      if (i < 1 || i > rows || j < 1 || j > cols)
        malformed(name, "coordinate index out of range");
      if (!std::isfinite(v)) malformed(name, "non-finite entry");
      // Duplicate coordinates accumulate, matching assembly conventions.
      m(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) += v;
    }
  }
  return m;
}

Matrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::missing_file, "cannot open '" + path + "'");
  return read_matrix_market(in, path);
}

void write_matrix_market(const Matrix& m, std::ostream& out,
                         MatrixMarketFormat format) {
  require_finite(m, "write_matrix_market");
  if (m.empty())
    throw Error(ErrorCode::invalid_input, "cannot write empty matrix");
  char buf[64];
  if (format == MatrixMarketFormat::array) {
    out << "%%MatrixMarket matrix array real general\n";
    out << m.rows() << " " << m.cols() << "\n";
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t i = 0; i < m.rows(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
        out << buf << "\n";
      }
  } else {
    std::size_t nnz = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0.0) ++nnz;
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.rows() << " " << m.cols() << " " << nnz << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0.0) {
          std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
          out << (i + 1) << " " << (j + 1) << " " << buf << "\n";
        }
  }
}

void write_matrix_market(const Matrix& m, const std::string& path,
                         MatrixMarketFormat format) {
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorCode::missing_file, "cannot open '" + path + "' for writing");
  write_matrix_market(m, out, format);
  if (!out) throw Error(ErrorCode::missing_file, "write to '" + path + "' failed");
}

}  // namespace nearband
