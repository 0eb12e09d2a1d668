#include "svoa/numeric.hpp"

#include <algorithm>
#include <sstream>

namespace svoa {

Integer floor_of(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Integer ceil_of(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Rational mod_one(const Rational& x) {
  Rational r = x - Rational(floor_of(x));
  r.canonicalize();
  return r;
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + s);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

std::string to_string(const QVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

Integer lcm_of_denominators(const QVector& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

Integer lcm_of_denominators(const QMatrix& m) { return lcm_of_denominators(m.data()); }

QMatrix to_rational(const ZMatrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rational(m(i, j));
  return q;
}

ZMatrix to_integer(const QMatrix& m) {
  ZMatrix z(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integer(m(i, j))) throw std::domain_error("matrix entry is not integral");
      z(i, j) = m(i, j).get_num();
    }
  return z;
}

QVector to_rational(const ZVector& v) {
  QVector q(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) q[i] = Rational(v[i]);
  return q;
}

QVector mat_vec(const QMatrix& m, const QVector& v) {
  if (m.cols() != v.size()) throw std::invalid_argument("mat_vec shape mismatch");
  QVector r(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (v[j] != 0) r[i] += m(i, j) * v[j];
  return r;
}

QVector vec_mat(const QVector& v, const QMatrix& m) {
  if (m.rows() != v.size()) throw std::invalid_argument("vec_mat shape mismatch");
  QVector r(m.cols(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] += v[i] * m(i, j);
  }
  return r;
}

Rational dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational bilinear(const QMatrix& g, const QVector& a, const QVector& b) {
  return dot(a, mat_vec(g, b));
}

namespace {

// In-place reduction to row echelon form; returns pivot columns.
std::vector<std::size_t> echelon(QMatrix& a, bool reduced, Rational* det_sign = nullptr) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r) {
      a.swap_rows(p, r);
      if (det_sign) *det_sign = -*det_sign;
    }
    if (reduced) {
      Rational inv = 1 / a(r, c);
      if (det_sign) *det_sign *= a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    }
    for (std::size_t i = reduced ? 0 : r + 1; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Rational determinant(const QMatrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
  if (m.rows() == 0) return 1;
  QMatrix a = m;
  Rational sign = 1;
  auto piv = echelon(a, false, &sign);
  if (piv.size() < a.rows()) return 0;
  Rational d = sign;
  for (std::size_t i = 0; i < a.rows(); ++i) d *= a(i, i);
  return d;
}

std::size_t rank_of(const QMatrix& m) {
  QMatrix a = m;
  return echelon(a, false).size();
}

QMatrix inverse(const QMatrix& m) {
  if (!m.square()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = echelon(aug, true);
  if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1))
    throw std::domain_error("matrix is singular");
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

bool is_symmetric(const QMatrix& m) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

bool is_positive_definite(const QMatrix& m) {
  if (!is_symmetric(m)) return false;
  // Symmetric elimination without pivoting: the k-th pivot is the ratio of
  // consecutive leading principal minors.
  QMatrix a = m;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return true;
}

QMatrix row_space_basis(const QMatrix& m) {
  QMatrix a = m;
  auto piv = echelon(a, true);
  QMatrix b(piv.size(), m.cols());
  for (std::size_t i = 0; i < piv.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) b(i, j) = a(i, j);
  return b;
}

QMatrix rational_kernel(const QMatrix& m) {
  QMatrix a = m;
  auto piv = echelon(a, true);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  QMatrix ker(0, m.cols());
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    QVector v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -a(i, f);
    ker.append_row(v);
  }
  return ker;
}

bool solve_in_row_space(const QMatrix& basis, const QVector& v, QVector& out) {
  // Solve x * basis = v  <=>  basis^T x^T = v^T.
  const std::size_t k = basis.rows(), n = basis.cols();
  QMatrix aug(n, k + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug(i, j) = basis(j, i);
    aug(i, k) = v[i];
  }
  auto piv = echelon(aug, true);
  out.assign(k, Rational(0));
  for (std::size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] == k) return false;  // inconsistent
    out[piv[i]] = aug(i, k);
  }
  return true;
}

ZMatrix hermite_form(const ZMatrix& m) {
  ZMatrix a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    while (true) {
      std::size_t best = rows;
      for (std::size_t k = r; k < rows; ++k)
        if (a(k, c) != 0 && (best == rows || abs(a(k, c)) < abs(a(best, c)))) best = k;
      if (best == rows) break;
      a.swap_rows(best, r);
      bool clean = true;
      for (std::size_t k = r + 1; k < rows; ++k) {
        if (a(k, c) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(k, c).get_mpz_t(), a(r, c).get_mpz_t());
        for (std::size_t j = c; j < cols; ++j) a(k, j) -= q * a(r, j);
        if (a(k, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (r >= rows || a(r, c) == 0) continue;
    if (a(r, c) < 0)
      for (std::size_t j = c; j < cols; ++j) a(r, j) = -a(r, j);
    for (std::size_t k = 0; k < r; ++k) {
      if (a(k, c) == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a(k, c).get_mpz_t(), a(r, c).get_mpz_t());
      if (q != 0)
        for (std::size_t j = c; j < cols; ++j) a(k, j) -= q * a(r, j);
    }
    ++r;
  }
  ZMatrix h(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) h(i, j) = a(i, j);
  return h;
}

namespace {

void add_row_multiple(ZMatrix& a, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t j = 0; j < a.cols(); ++j) a(dst, j) += f * a(src, j);
}
void add_col_multiple(ZMatrix& a, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, dst) += f * a(i, src);
}
void swap_cols(ZMatrix& a, std::size_t x, std::size_t y) {
  if (x == y) return;
  for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a(i, x), a(i, y));
}

}  // namespace

SmithForm smith_form(const ZMatrix& m) {
  ZMatrix a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  ZMatrix u = ZMatrix::identity(rows);
  ZMatrix v = ZMatrix::identity(cols);
  const std::size_t lim = std::min(rows, cols);
  for (std::size_t t = 0; t < lim; ++t) {
    // Pivot: smallest nonzero entry of the trailing block.
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a(i, j) != 0 && (pi == rows || abs(a(i, j)) < abs(a(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == rows) break;
    a.swap_rows(pi, t);
    u.swap_rows(pi, t);
    swap_cols(a, pj, t);
    swap_cols(v, pj, t);
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        add_row_multiple(a, i, t, -q);
        add_row_multiple(u, i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        add_col_multiple(a, j, t, -q);
        add_col_multiple(v, j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        // Move the smallest remainder in row/column t into the pivot.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (a(i, t) != 0 && abs(a(i, t)) < abs(a(bi, bj))) { bi = i; bj = t; }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(t, j) != 0 && abs(a(t, j)) < abs(a(bi, bj))) { bi = t; bj = j; }
        a.swap_rows(bi, t);
        u.swap_rows(bi, t);
        swap_cols(a, bj, t);
        swap_cols(v, bj, t);
        continue;
      }
      // Divisibility of the trailing block by the pivot.
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            add_row_multiple(a, t, i, 1);
            add_row_multiple(u, t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < rows; ++j) u(t, j) = -u(t, j);
    }
  }
  SmithForm s{std::move(u), std::move(v), ZVector(lim)};
  for (std::size_t i = 0; i < lim; ++i) s.diagonal[i] = a(i, i);
  return s;
}

ZMatrix integer_kernel(const ZMatrix& m) {
  SmithForm s = smith_form(m);
  std::size_t r = 0;
  while (r < s.diagonal.size() && s.diagonal[r] != 0) ++r;
  ZMatrix k(m.rows() - r, m.rows());
  for (std::size_t i = r; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j) k(i - r, j) = s.left(i, j);
  return k;
}

ZMatrix saturation(const ZMatrix& m) {
  SmithForm s = smith_form(m);
  std::size_t r = 0;
  while (r < s.diagonal.size() && s.diagonal[r] != 0) ++r;
  ZMatrix vinv = inverse_unimodular(s.right);
  ZMatrix out(r, m.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = vinv(i, j);
  return out;
}

ZMatrix inverse_unimodular(const ZMatrix& m) {
  QMatrix inv = inverse(to_rational(m));
  return to_integer(inv);
}

Integer determinant(const ZMatrix& m) {
  Rational d = determinant(to_rational(m));
  return d.get_num();
}

std::ostream& operator<<(std::ostream& os, const QMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j).get_str();
    os << ']';
  }
  return os << ']';
}

}  // namespace svoa
