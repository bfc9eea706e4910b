// SPDX-License-Identifier: Apache-2.0
#ifndef BITSCALE_MATRIX_HPP
#define BITSCALE_MATRIX_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace bitscale {

/// Dense row-major matrix of doubles. Small and value-semantic; every
/// weight, activation and Hessian in the library lives in one of these.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  double *row(std::size_t r) { return data_.data() + r * cols_; }
  const double *row(std::size_t r) const { return data_.data() + r * cols_; }

  std::vector<double> &data() { return data_; }
  const std::vector<double> &data() const { return data_; }

  Matrix transposed() const;
  bool is_finite() const;
  bool is_symmetric(double tol = 1e-10) const;
  double max_abs() const;
  double frobenius_norm() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Integer-valued matrix used for quantized index grids.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, std::int64_t fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  std::int64_t &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<std::int64_t> &data() { return data_; }
  const std::vector<std::int64_t> &data() const { return data_; }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

Matrix matmul(const Matrix &a, const Matrix &b);
Matrix operator+(const Matrix &a, const Matrix &b);
Matrix operator-(const Matrix &a, const Matrix &b);
Matrix operator*(double s, const Matrix &a);
bool approx_equal(const Matrix &a, const Matrix &b, double tol);
double max_abs_diff(const Matrix &a, const Matrix &b);

} // namespace bitscale

#endif
