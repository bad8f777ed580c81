//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "tiermol/numerics/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace tiermol {

std::string Shape::str() const {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) { }

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto &r: rows) {
    if (r.size() != cols_)
      throw ShapeError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1.0;
  return m;
}

Matrix Matrix::ones(std::size_t rows, std::size_t cols) {
  return Matrix(rows, cols, 1.0);
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>> &rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw ShapeError("ragged rows: row " + std::to_string(i) + " has "
                       + std::to_string(rows[i].size()) + " entries, expected "
                       + std::to_string(cols));
    std::copy(rows[i].begin(), rows[i].end(), m.data().begin() + i * cols);
  }
  return m;
}

Matrix matmul(const Matrix &a, const Matrix &b) {
  if (a.cols() != b.rows())
    throw ShapeError("matmul: inner dimensions disagree (" + a.shape().str()
                     + " * " + b.shape().str() + ")");

  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0)
        continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Matrix transpose(const Matrix &a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      t(j, i) = a(i, j);
  return t;
}

void require_same_shape(const Matrix &a, const Matrix &b, const char *op) {
  if (a.shape() != b.shape())
    throw ShapeError(std::string(op) + ": shape mismatch (" + a.shape().str()
                     + " vs " + b.shape().str() + ")");
}

Matrix operator+(const Matrix &a, const Matrix &b) {
  require_same_shape(a, b, "add");
  Matrix c = a;
  std::transform(c.data().begin(), c.data().end(), b.data().begin(),
                 c.data().begin(), std::plus<>());
  return c;
}

Matrix operator-(const Matrix &a, const Matrix &b) {
  require_same_shape(a, b, "sub");
  Matrix c = a;
  std::transform(c.data().begin(), c.data().end(), b.data().begin(),
                 c.data().begin(), std::minus<>());
  return c;
}

Matrix operator*(double s, const Matrix &a) {
  Matrix c = a;
  for (double &v: c.data())
    v *= s;
  return c;
}

double max_abs_diff(const Matrix &a, const Matrix &b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double sum(const Matrix &a) {
  double s = 0.0;
  for (double v: a.data())
    s += v;
  return s;
}

bool all_finite(const Matrix &a) {
  return std::all_of(a.data().begin(), a.data().end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace tiermol
