#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "coxder/scalar.hpp"

namespace coxder {

// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, const T& fill = T()) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(size_t a, size_t b) {
    if (a == b) return;
    for (size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
      for (size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using ScalarMatrix = Matrix<Scalar>;

inline ScalarMatrix identity_matrix(size_t n) {
  ScalarMatrix m(n, n, Scalar(0));
  for (size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("Matrix: dimension mismatch in product");
  Matrix<T> r(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) {
      T acc = a(i, 0) * b(0, j);
      for (size_t k = 1; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      r(i, j) = std::move(acc);
    }
  return r;
}

}  // namespace coxder
