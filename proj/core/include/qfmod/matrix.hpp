#pragma once

#include "qfmod/modring.hpp"

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qfmod {

/// Dense row-major matrix of arbitrary-precision integers.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_{rows}, cols_{cols}, data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const;
  Matrix reduced(const Integer& m) const;
  bool is_symmetric() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Product a*b with entries reduced mod m.
Matrix multiply_mod(const Matrix& a, const Matrix& b, const Integer& m);

/// Exact determinant over Z (fraction-free Bareiss elimination).
Integer determinant(const Matrix& a);

/// Inverse of a mod p^k. Throws NotAUnit if det(a) is not a unit.
Matrix inverse_mod(const Matrix& a, const PrimePower& pp);

/// An n-ary quadratic form x'Qx given by a symmetric integer matrix.
class QuadraticForm {
 public:
  QuadraticForm() = default;
  /// Throws DomainError unless m is square and symmetric.
  explicit QuadraticForm(Matrix m);
  QuadraticForm(std::initializer_list<std::initializer_list<long>> rows) : QuadraticForm(Matrix(rows)) {}

  std::size_t dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  /// x'Qx reduced mod m.
  Integer evaluate(const std::vector<Integer>& x, const Integer& m) const;

  friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) = default;

 private:
  Matrix m_;
};

}  // namespace qfmod
