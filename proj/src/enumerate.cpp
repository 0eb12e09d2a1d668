#include "svoa/enumerate.hpp"

#include <limits>

#include "svoa/lattice.hpp"

namespace svoa {

namespace {

std::int64_t to_i64(const Integer& v) {
  if (!v.fits_slong_p()) throw DomainError("value too large for enumeration engine");
  return v.get_si();
}

}  // namespace

Enumerator::Enumerator(const QMatrix& gram) : n_(gram.rows()) {
  const std::size_t n = n_;
  Integer den = lcm_of_denominators(gram);
  den_ = to_i64(den);
  ZMatrix t = lll_transform(gram);
  QMatrix tq = to_rational(t);
  QMatrix reduced = tq * gram * tq.transpose();
  a_.resize(n * n);
  t_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational v = reduced(i, j) * den;
      a_[i * n + j] = to_i64(v.get_num());
      t_[i * n + j] = to_i64(t(i, j));
      if (std::abs(a_[i * n + j]) > (std::int64_t{1} << 40))
        throw DomainError("Gram entries too large for enumeration engine");
    }
  t_inv_ = n ? inverse(tq) : QMatrix();

  // Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
  q_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q_[i * n + j] = static_cast<double>(a_[i * n + j]);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      q_[j * n + i] = q_[i * n + j];
      q_[i * n + j] /= q_[i * n + i];
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q_[k * n + l] -= q_[k * n + i] * q_[i * n + l];
  }
}

Enumerator::Coset Enumerator::prepare(const QVector& rep) const {
  Coset c;
  c.offset.assign(n_, 0);
  if (rep.empty()) return c;
  if (rep.size() != n_) throw std::invalid_argument("coset representative has wrong length");
  QVector r = vec_mat(rep, t_inv_);
  Integer scale = lcm_of_denominators(r);
  c.scale = to_i64(scale);
  bool sym = true;
  for (std::size_t i = 0; i < n_; ++i) {
    Rational v = r[i] * scale;
    Integer m;
    mpz_fdiv_r(m.get_mpz_t(), v.get_num_mpz_t(), scale.get_mpz_t());
    c.offset[i] = m.get_si();
    if ((2 * c.offset[i]) % c.scale != 0) sym = false;
  }
  c.symmetric = sym;
  return c;
}

std::int64_t Enumerator::scaled_bound(const Rational& max_norm, const Coset& c) const {
  if (max_norm < 0) return -1;
  Rational b = max_norm * den_ * c.scale * c.scale;
  Integer f = floor_of(b);
  if (!f.fits_slong_p() || f > (Integer(1) << 56)) throw DomainError("enumeration bound too large");
  return f.get_si();
}

Rational Enumerator::norm_value(std::int64_t scaled, const Coset& c) const {
  Rational r(Integer(static_cast<long>(scaled)), Integer(static_cast<long>(den_)) * c.scale * c.scale);
  r.canonicalize();
  return r;
}

QVector Enumerator::to_original(const std::int64_t* z, const Coset& c) const {
  QVector out(n_, Rational(0));
  for (std::size_t j = 0; j < n_; ++j) {
    Integer acc = 0;
    for (std::size_t i = 0; i < n_; ++i)
      if (z[i]) acc += Integer(static_cast<long>(z[i])) * static_cast<long>(t_[i * n_ + j]);
    out[j] = Rational(acc, Integer(static_cast<long>(c.scale)));
    out[j].canonicalize();
  }
  return out;
}

void Enumerator::to_original_int(const std::int64_t* z, std::int64_t* out) const {
  for (std::size_t j = 0; j < n_; ++j) {
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < n_; ++i) acc += z[i] * t_[i * n_ + j];
    out[j] = acc;
  }
}

}  // namespace svoa
