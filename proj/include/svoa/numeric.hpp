#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace svoa {

using Integer = mpz_class;
using Rational = mpq_class;
using QVector = std::vector<Rational>;
using ZVector = std::vector<Integer>;

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      for (const auto& v : r) data_.push_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  void set_row(std::size_t i, const std::vector<T>& r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = r[j];
  }
  void append_row(const std::vector<T>& r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }
  Matrix scaled(const T& s) const {
    Matrix c = *this;
    for (auto& v : c.data_) v *= s;
    return c;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using ZMatrix = Matrix<Integer>;

// ---- rational helpers -------------------------------------------------------

Integer floor_of(const Rational& x);
Integer ceil_of(const Rational& x);
/// Representative of x mod 1 in [0, 1).
Rational mod_one(const Rational& x);
bool is_integer(const Rational& x);
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& x);
std::string to_string(const QVector& v);
Integer lcm_of_denominators(const QVector& v);
Integer lcm_of_denominators(const QMatrix& m);

QMatrix to_rational(const ZMatrix& m);
/// Exact conversion; throws if any entry is not an integer.
ZMatrix to_integer(const QMatrix& m);
QVector to_rational(const ZVector& v);

QVector mat_vec(const QMatrix& m, const QVector& v);
QVector vec_mat(const QVector& v, const QMatrix& m);
Rational dot(const QVector& a, const QVector& b);
/// Bilinear form a^T G b.
Rational bilinear(const QMatrix& g, const QVector& a, const QVector& b);

// ---- linear algebra over Q --------------------------------------------------

Rational determinant(const QMatrix& m);
std::size_t rank_of(const QMatrix& m);
QMatrix inverse(const QMatrix& m);
/// True iff m is symmetric with all leading principal minors positive.
bool is_positive_definite(const QMatrix& m);
bool is_symmetric(const QMatrix& m);
/// Basis (rows) of the rational row space of m, in reduced echelon form.
QMatrix row_space_basis(const QMatrix& m);
/// Rows spanning {x : m x = 0} over Q.
QMatrix rational_kernel(const QMatrix& m);
/// Solve x * basis = v for x, where basis rows are independent; nullopt-like
/// behaviour is signalled by returning false.
bool solve_in_row_space(const QMatrix& basis, const QVector& v, QVector& out);

// ---- integer normal forms ---------------------------------------------------

/// Row-style Hermite normal form of the lattice spanned by the rows of m.
/// Zero rows are dropped; the result has full row rank.
ZMatrix hermite_form(const ZMatrix& m);

struct SmithForm {
  ZMatrix left;    // U, unimodular
  ZMatrix right;   // V, unimodular
  ZVector diagonal;  // U*m*V = diag(diagonal), entries d1 | d2 | ... (zeros last)
};
SmithForm smith_form(const ZMatrix& m);

/// Basis (rows) of {y in Z^m : y * M = 0}.
ZMatrix integer_kernel(const ZMatrix& m);
/// Basis (rows) of the intersection of Z^n with the rational row space of m.
ZMatrix saturation(const ZMatrix& m);

ZMatrix inverse_unimodular(const ZMatrix& m);
Integer determinant(const ZMatrix& m);

std::ostream& operator<<(std::ostream& os, const QMatrix& m);

}  // namespace svoa
