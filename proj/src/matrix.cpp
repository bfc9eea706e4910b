// SPDX-License-Identifier: Apache-2.0
#include "bitscale/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bitscale {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_)
    throw std::invalid_argument("Matrix: data length does not match shape");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto &r : rows) {
    if (r.size() != cols_)
      throw std::invalid_argument("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

bool Matrix::is_symmetric(double tol) const {
  if (rows_ != cols_)
    return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c) {
      double a = (*this)(r, c), b = (*this)(c, r);
      if (std::abs(a - b) > tol * std::max({1.0, std::abs(a), std::abs(b)}))
        return false;
    }
  return true;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_)
    m = std::max(m, std::abs(v));
  return m;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_)
    s += v * v;
  return std::sqrt(s);
}

Matrix matmul(const Matrix &a, const Matrix &b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matmul: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0)
        continue;
      const double *brow = b.row(k);
      double *orow = out.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j)
        orow[j] += aik * brow[j];
    }
  }
  return out;
}

Matrix operator+(const Matrix &a, const Matrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix add: shape mismatch");
  Matrix out = a;
  for (std::size_t i = 0; i < out.size(); ++i)
    out.data()[i] += b.data()[i];
  return out;
}

Matrix operator-(const Matrix &a, const Matrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix sub: shape mismatch");
  Matrix out = a;
  for (std::size_t i = 0; i < out.size(); ++i)
    out.data()[i] -= b.data()[i];
  return out;
}

Matrix operator*(double s, const Matrix &a) {
  Matrix out = a;
  for (double &v : out.data())
    v *= s;
  return out;
}

bool approx_equal(const Matrix &a, const Matrix &b, double tol) {
  return max_abs_diff(a, b) <= tol;
}

double max_abs_diff(const Matrix &a, const Matrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

} // namespace bitscale
