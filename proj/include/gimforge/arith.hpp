#pragma once

// Exact integer/rational matrices and the handful of linear-algebra routines
// the rest of the library needs. Everything is exact; nothing here touches
// floating point.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gimforge {

using Integer = mpz_class;
using Rational = mpq_class;
using RatVector = std::vector<Rational>;
using IntVector = std::vector<Integer>;

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      for (const auto& x : r) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

RatMatrix to_rational(const IntMatrix& m);
IntMatrix int_matrix(const std::vector<std::vector<long>>& rows);
std::vector<std::vector<long>> to_long_rows(const IntMatrix& m);

// Principal submatrix on the given index list (in that order).
template <class T>
Matrix<T> submatrix(const Matrix<T>& m, const std::vector<std::size_t>& idx) {
  Matrix<T> s(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) s(a, b) = m(idx[a], idx[b]);
  return s;
}

Rational determinant(RatMatrix a);
Integer determinant(const IntMatrix& a);  // Bareiss, fraction free
std::size_t rank(RatMatrix a);
std::size_t rank(const std::vector<RatVector>& rows);

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a);

// Basis of {x : a x = 0}, read off the reduced echelon form: one vector per
// free column, with a 1 in that column.
std::vector<RatVector> kernel_basis(const RatMatrix& a);

// Coefficients c_0..c_n of det(t I - a), c_n = 1 (Faddeev-LeVerrier).
RatVector characteristic_polynomial(const RatMatrix& a);

RatVector leading_principal_minors(const RatMatrix& a);

Rational bilinear(const RatMatrix& form, const RatVector& x, const RatVector& y);
RatVector mat_vec(const RatMatrix& a, const RatVector& x);

// Solve a x = b for square nonsingular a.
std::optional<RatVector> solve(RatMatrix a, RatVector b);

std::string rational_str(const Rational& q);  // always "p/q"
Rational parse_rational(const std::string& s);

}  // namespace gimforge
