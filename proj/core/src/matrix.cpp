#include "qfmod/matrix.hpp"

#include "qfmod/errors.hpp"

#include <utility>

namespace qfmod {

Matrix::Matrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DomainError("ragged matrix literal");
    for (long v : row) data_.emplace_back(v);
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::reduced(const Integer& m) const {
  Matrix r = *this;
  for (auto& v : r.data_) v = mod(v, m);
  return r;
}

bool Matrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("matrix product: dimension mismatch");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t l = 0; l < a.cols_; ++l) {
      const Integer& ail = a(i, l);
      if (ail == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += ail * b(l, j);
    }
  return c;
}

Matrix multiply_mod(const Matrix& a, const Matrix& b, const Integer& m) {
  return (a * b).reduced(m);
}

Integer determinant(const Matrix& a) {
  if (!a.is_square()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return Integer{1};
  Matrix m = a;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return Integer{0};
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Matrix inverse_mod(const Matrix& a, const PrimePower& pp) {
  if (!a.is_square()) throw DomainError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  const Integer& q = pp.modulus();
  Matrix m = a.reduced(q);
  Matrix inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && mpz_divisible_p(m(piv, c).get_mpz_t(), pp.p().get_mpz_t())) ++piv;
    if (piv == n) throw NotAUnit("matrix is not invertible mod " + q.get_str());
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    }
    const Integer scale = inverse_mod(m(c, c), q);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) = mod(m(c, j) * scale, q);
      inv(c, j) = mod(inv(c, j) * scale, q);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m(r, c) == 0) continue;
      const Integer f = m(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) = mod(m(r, j) - f * m(c, j), q);
        inv(r, j) = mod(inv(r, j) - f * inv(c, j), q);
      }
    }
  }
  return inv;
}

QuadraticForm::QuadraticForm(Matrix m) : m_{std::move(m)} {
  if (!m_.is_square()) throw DomainError("quadratic form matrix must be square");
  if (!m_.is_symmetric()) throw DomainError("quadratic form matrix must be symmetric");
}

Integer QuadraticForm::evaluate(const std::vector<Integer>& x, const Integer& m) const {
  if (x.size() != dim()) throw DomainError("evaluate: dimension mismatch");
  Integer acc = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] == 0) continue;
    Integer row = 0;
    for (std::size_t j = 0; j < dim(); ++j) row += m_(i, j) * x[j];
    acc += x[i] * row;
  }
  return mod(acc, m);
}

}  // namespace qfmod
