#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace nearband {

/// Dense real matrix, row-major. Everything in this project is desk
/// scale (a few hundred rows at most), so plain triple loops are used
/// throughout; no attempt is made at blocked or vectorised kernels.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  /// Row-wise construction: Matrix::from_rows({{1,2},{3,4}}).
  static Matrix from_rows(
      std::initializer_list<std::initializer_list<double>> rows);
  static Matrix identity(std::size_t n);
  static Matrix diagonal(const std::vector<double>& entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<double>& data() const noexcept { return data_; }

  Matrix transpose() const;

  /// Copy of the sub-block starting at (row0, col0) of size nrows x ncols.
  Matrix block(std::size_t row0, std::size_t col0, std::size_t nrows,
               std::size_t ncols) const;
  void set_block(std::size_t row0, std::size_t col0, const Matrix& b);

  double max_abs() const;
  double frobenius_norm() const;
  bool all_finite() const;

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

}  // namespace nearband
