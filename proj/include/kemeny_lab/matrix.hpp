#pragma once

#include <cstddef>
#include <vector>

#include "kemeny_lab/error.hpp"
#include "kemeny_lab/scalar.hpp"

namespace kemeny_lab {

/// Dense row-major matrix over one scalar field.
template <class S>
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, const S& value = S(0))
      : rows_(rows), cols_(cols), entries_(rows * cols, value) {
    if (rows == 0 || cols == 0) raise(ErrorKind::DimensionMismatch, "matrix dimensions must be >= 1");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  S& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> entries_;
};

template <class S>
Matrix<S> operator*(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.cols() != b.rows()) raise(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
  Matrix<S> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const S& aik = a(i, k);
      if (aik == S(0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

template <class S>
std::vector<S> operator*(const Matrix<S>& a, const std::vector<S>& v) {
  if (a.cols() != v.size()) raise(ErrorKind::DimensionMismatch, "matrix-vector shape mismatch");
  std::vector<S> out(a.rows(), S(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

template <class S>
Matrix<S> operator+(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) raise(ErrorKind::DimensionMismatch, "matrix sum shape mismatch");
  Matrix<S> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  return out;
}

template <class S>
Matrix<S> operator-(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) raise(ErrorKind::DimensionMismatch, "matrix difference shape mismatch");
  Matrix<S> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  return out;
}

template <class S>
Matrix<S> transpose(const Matrix<S>& a) {
  Matrix<S> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

/// Largest absolute entry.
template <class S>
S max_abs(const Matrix<S>& a) {
  S best(0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      S v = scalar_abs(a(i, j));
      if (v > best) best = v;
    }
  return best;
}

template <class S>
S max_abs(const std::vector<S>& v) {
  S best(0);
  for (const S& x : v) {
    S a = scalar_abs(x);
    if (a > best) best = a;
  }
  return best;
}

/// Row-sum norm ‖A‖_∞.
template <class S>
S inf_norm(const Matrix<S>& a) {
  S best(0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    S row(0);
    for (std::size_t j = 0; j < a.cols(); ++j) row += scalar_abs(a(i, j));
    if (row > best) best = row;
  }
  return best;
}

template <class S>
std::vector<S> ones_vector(std::size_t n) {
  return std::vector<S>(n, S(1));
}

/// Rank-one product x·yᵀ.
template <class S>
Matrix<S> outer(const std::vector<S>& x, const std::vector<S>& y) {
  Matrix<S> out(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) out(i, j) = x[i] * y[j];
  return out;
}

template <class S>
Matrix<double> to_float_matrix(const Matrix<S>& a) {
  Matrix<double> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = ScalarTraits<S>::to_double(a(i, j));
  return out;
}

}  // namespace kemeny_lab
