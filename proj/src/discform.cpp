#include "svoa/discform.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <regex>
#include <set>

namespace svoa {

namespace {

std::int64_t posmod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

DiscriminantForm::DiscriminantForm(std::vector<std::int64_t> orders, QMatrix qgram)
    : orders_(std::move(orders)), qgram_(std::move(qgram)) {
  const std::size_t k = orders_.size();
  if (qgram_.rows() != k || qgram_.cols() != k) throw DomainError("qgram shape does not match orders");
  for (auto d : orders_)
    if (d < 2) throw DomainError("discriminant form orders must be >= 2");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      qgram_(i, j) = mod_one(qgram_(i, j));
      if (i != j && !is_integer(qgram_(i, j) * orders_[i]))
        throw DomainError("bilinear values incompatible with generator orders");
    }
  if (!is_symmetric(qgram_)) throw DomainError("qgram must be symmetric");
  for (std::size_t i = 0; i < k; ++i) {
    const Rational d(static_cast<long>(orders_[i]));
    if (!is_integer(2 * d * qgram_(i, i)) || !is_integer(d * d * qgram_(i, i)))
      throw DomainError("quadratic value incompatible with generator order");
  }
  // Radical check with b(x, g_j) kept as numerators over a common denominator.
  Integer den = 1;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), qgram_(i, j).get_den_mpz_t());
  den *= 2;
  if (size() <= (1 << 22) && den.fits_slong_p() && den < (1 << 20)) {
    const std::int64_t n = den.get_si();
    std::vector<std::int64_t> bm(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        Rational v = i == j ? Rational(2 * qgram_(i, i)) : qgram_(i, j);
        bm[i * k + j] = posmod(Rational(v * den).get_num().get_si(), n);
      }
    DFElement x = zero();
    std::vector<std::int64_t> row(k, 0);  // n * b(x, g_j) mod n
    for (std::int64_t idx = 1; idx < size(); ++idx) {
      for (std::size_t i = k; i-- > 0;) {
        if (++x[i] < orders_[i]) {
          for (std::size_t j = 0; j < k; ++j) row[j] = (row[j] + bm[i * k + j]) % n;
          break;
        }
        x[i] = 0;
        for (std::size_t j = 0; j < k; ++j) row[j] = posmod(row[j] - (orders_[i] - 1) * bm[i * k + j], n);
      }
      if (std::all_of(row.begin(), row.end(), [](std::int64_t v) { return v == 0; }))
        throw DomainError("discriminant form is degenerate");
    }
  }
}

std::int64_t DiscriminantForm::size() const {
  std::int64_t s = 1;
  for (auto d : orders_) s *= d;
  return s;
}

Rational DiscriminantForm::q(const DFElement& x) const {
  Rational s = 0;
  const std::size_t k = orders_.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (!x[i]) continue;
    s += qgram_(i, i) * (x[i] * x[i]);
    for (std::size_t j = i + 1; j < k; ++j)
      if (x[j]) s += qgram_(i, j) * (x[i] * x[j]);
  }
  return mod_one(s);
}

Rational DiscriminantForm::b(const DFElement& x, const DFElement& y) const {
  Rational s = 0;
  const std::size_t k = orders_.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (!x[i]) continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (!y[j]) continue;
      if (i == j) s += 2 * qgram_(i, i) * (x[i] * y[j]);
      else s += qgram_(i, j) * (x[i] * y[j]);
    }
  }
  return mod_one(s);
}

DFElement DiscriminantForm::add(const DFElement& x, const DFElement& y) const {
  DFElement r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = posmod(x[i] + y[i], orders_[i]);
  return r;
}

DFElement DiscriminantForm::neg(const DFElement& x) const {
  DFElement r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = posmod(-x[i], orders_[i]);
  return r;
}

DFElement DiscriminantForm::scale(const DFElement& x, std::int64_t k) const {
  DFElement r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = posmod(x[i] * k, orders_[i]);
  return r;
}

std::int64_t DiscriminantForm::order_of(const DFElement& x) const {
  std::int64_t o = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::int64_t d = orders_[i];
    o = std::lcm(o, d / std::gcd(x[i], d));
  }
  return o;
}

std::int64_t DiscriminantForm::index_of(const DFElement& x) const {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) idx = idx * orders_[i] + x[i];
  return idx;
}

DFElement DiscriminantForm::element(std::int64_t index) const {
  DFElement x(orders_.size());
  for (std::size_t i = orders_.size(); i-- > 0;) {
    x[i] = index % orders_[i];
    index /= orders_[i];
  }
  return x;
}

std::vector<DFElement> DiscriminantForm::elements() const {
  std::vector<DFElement> out;
  out.reserve(size());
  for (std::int64_t i = 0; i < size(); ++i) out.push_back(element(i));
  return out;
}

bool DFSubgroup::contains(const DiscriminantForm& d, const DFElement& x) const {
  (void)d;
  return std::binary_search(elements.begin(), elements.end(), x);
}

DFSubgroup generate_subgroup(const DiscriminantForm& d, const std::vector<DFElement>& gens) {
  std::set<DFElement> seen{d.zero()};
  std::vector<DFElement> frontier{d.zero()};
  while (!frontier.empty()) {
    std::vector<DFElement> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        DFElement y = d.add(x, g);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  DFSubgroup s;
  s.gens = gens;
  s.elements.assign(seen.begin(), seen.end());
  // Lexicographic order on residue tuples coincides with mixed-radix order.
  return s;
}

DFElement FormMap::apply(const DiscriminantForm& target, const DFElement& x) const {
  DFElement r = target.zero();
  for (std::size_t i = 0; i < x.size(); ++i) r = target.add(r, target.scale(images[i], x[i]));
  return r;
}

DFElement DiscResult::class_of(const Lattice& l, const LatticeVector& v) const {
  (void)l;
  QVector c = mat_vec(to_class, v);
  DFElement x(form.generators());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!is_integer(c[i])) throw DomainError("vector is not in the dual lattice");
    Integer m;
    Integer ord(static_cast<long>(form.orders()[i]));
    mpz_fdiv_r(m.get_mpz_t(), c[i].get_num_mpz_t(), ord.get_mpz_t());
    x[i] = m.get_si();
  }
  return x;
}

LatticeVector DiscResult::lift(const DFElement& x) const {
  LatticeVector v(lifts.empty() ? 0 : lifts[0].size(), Rational(0));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += lifts[i][j] * x[i];
  return v;
}

DiscResult discriminant_form(const Lattice& l) {
  if (!l.is_even()) throw DomainError("discriminant_form requires an even lattice");
  const std::size_t n = l.rank();
  DiscResult res;
  if (n == 0) {
    res.form = DiscriminantForm({}, QMatrix(0, 0));
    res.to_class = QMatrix(0, 0);
    return res;
  }
  ZMatrix g = to_integer(l.gram());
  SmithForm s = smith_form(g);
  ZMatrix uinv = inverse_unimodular(s.left);
  QMatrix ginv = inverse(l.gram());
  QMatrix lifts_all = ginv * to_rational(uinv);  // columns: lifts
  QMatrix ug = to_rational(s.left * g);
  std::vector<std::int64_t> orders;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (s.diagonal[i] != 1) {
      if (!s.diagonal[i].fits_slong_p()) throw DomainError("discriminant group too large");
      orders.push_back(s.diagonal[i].get_si());
      keep.push_back(i);
    }
  const std::size_t k = keep.size();
  res.to_class = QMatrix(k, n);
  for (std::size_t a = 0; a < k; ++a) {
    res.lifts.push_back(lifts_all.col(keep[a]));
    for (std::size_t j = 0; j < n; ++j) res.to_class(a, j) = ug(keep[a], j);
  }
  QMatrix qg(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t c = 0; c < k; ++c) {
      Rational ip = l.inner(res.lifts[a], res.lifts[c]);
      qg(a, c) = a == c ? ip / 2 : ip;
    }
  res.form = DiscriminantForm(orders, qg);
  return res;
}

int signature_mod8(const DiscriminantForm& d) {
  // q(x) = sum_i x_i^2 q_ii + sum_{i<j} x_i x_j b_ij, taken in (1/den)Z / Z.
  const std::size_t k = d.generators();
  Integer den = 1;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.qgram()(i, j).get_den_mpz_t());
  if (!den.fits_slong_p() || den > 1 << 20) throw DomainError("form denominators too large");
  const std::int64_t n = den.get_si();
  std::vector<std::int64_t> c(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) c[i * k + j] = posmod(Rational(d.qgram()(i, j) * den).get_num().get_si(), n);
  const long double two_pi = 2 * std::numbers::pi_v<long double>;
  std::vector<long double> cs(n), sn(n);
  for (std::int64_t v = 0; v < n; ++v) {
    cs[v] = std::cos(two_pi * v / n);
    sn[v] = std::sin(two_pi * v / n);
  }
  long double re = 0, im = 0;
  DFElement x = d.zero();
  for (std::int64_t idx = 0; idx < d.size(); ++idx) {
    std::int64_t v = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!x[i]) continue;
      v += x[i] * x[i] % n * c[i * k + i];
      for (std::size_t j = i + 1; j < k; ++j) v += x[i] * x[j] % n * c[i * k + j];
      v %= n;
    }
    re += cs[v];
    im += sn[v];
    for (std::size_t i = k; i-- > 0;) {
      if (++x[i] < d.orders()[i]) break;
      x[i] = 0;
    }
  }
  long double norm = std::sqrt(static_cast<long double>(d.size()));
  re /= norm;
  im /= norm;
  if (std::fabs(std::hypot(re, im) - 1) > 1e-6) throw DomainError("Gauss sum has modulus != 1");
  long double eighths = std::atan2(im, re) / two_pi * 8;
  long double r = std::round(eighths);
  if (std::fabs(eighths - r) > 1e-6) throw DomainError("Gauss sum phase is not an eighth root of unity");
  return static_cast<int>(posmod(static_cast<std::int64_t>(r), 8));
}

namespace {

std::map<std::pair<std::int64_t, Rational>, std::int64_t> value_profile(const DiscriminantForm& d,
                                                                        bool negate) {
  std::map<std::pair<std::int64_t, Rational>, std::int64_t> prof;
  for (std::int64_t i = 0; i < d.size(); ++i) {
    DFElement x = d.element(i);
    Rational q = d.q(x);
    if (negate) q = mod_one(-q);
    ++prof[{d.order_of(x), q}];
  }
  return prof;
}

}  // namespace

std::optional<FormMap> is_isomorphic_df(const DiscriminantForm& a, const DiscriminantForm& b, bool anti,
                                        std::int64_t bound) {
  if (a.size() > bound || b.size() > bound) throw DomainError("discriminant form exceeds search bound");
  if (a.size() != b.size()) return std::nullopt;
  if (value_profile(a, anti) != value_profile(b, false)) return std::nullopt;
  const std::size_t k = a.generators();
  const Rational sign = anti ? -1 : 1;
  std::vector<std::vector<DFElement>> cands(k);
  std::vector<DFElement> belems = b.elements();
  for (std::size_t i = 0; i < k; ++i) {
    DFElement gi = a.zero();
    gi[i] = 1;
    Rational want = mod_one(sign * a.q(gi));
    for (const auto& y : belems)
      if (b.order_of(y) == a.orders()[i] && b.q(y) == want) cands[i].push_back(y);
    if (cands[i].empty()) return std::nullopt;
  }
  FormMap m;
  m.anti = anti;
  m.images.resize(k);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == k) return generate_subgroup(b, m.images).size() == static_cast<std::size_t>(b.size());
    DFElement gi = a.zero();
    gi[i] = 1;
    for (const auto& y : cands[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        DFElement gj = a.zero();
        gj[j] = 1;
        ok = b.b(y, m.images[j]) == mod_one(sign * a.b(gi, gj));
      }
      if (!ok) continue;
      m.images[i] = y;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return m;
}

DFSubgroup orthogonal_complement(const DiscriminantForm& d, const DFSubgroup& s) {
  std::vector<DFElement> elems;
  for (std::int64_t i = 0; i < d.size(); ++i) {
    DFElement x = d.element(i);
    bool ok = true;
    for (const auto& g : s.elements)
      if (d.b(x, g) != 0) {
        ok = false;
        break;
      }
    if (ok) elems.push_back(x);
  }
  DFSubgroup out = generate_subgroup(d, elems);
  if (static_cast<std::int64_t>(out.size() * s.size()) != d.size())
    throw DomainError("|S| * |S^perp| != |D|");
  // Keep a small generating set: greedily add elements not yet generated.
  std::vector<DFElement> gens;
  DFSubgroup cur = generate_subgroup(d, {});
  for (const auto& x : out.elements)
    if (!cur.contains(d, x)) {
      gens.push_back(x);
      cur = generate_subgroup(d, gens);
    }
  cur.gens = gens;
  return cur;
}

namespace {

std::vector<DFSubgroup> subgroup_search(const DiscriminantForm& d, std::int64_t bound, bool isotropic) {
  if (d.size() > bound) throw DomainError("discriminant form exceeds search bound");
  std::vector<DFElement> pool;
  for (std::int64_t i = 1; i < d.size(); ++i) {
    DFElement x = d.element(i);
    if (!isotropic || d.q(x) == 0) pool.push_back(x);
  }
  std::set<std::vector<DFElement>> seen;
  std::vector<DFSubgroup> out;
  std::vector<DFSubgroup> frontier{generate_subgroup(d, {})};
  seen.insert(frontier[0].elements);
  while (!frontier.empty()) {
    std::vector<DFSubgroup> next;
    for (const auto& h : frontier) {
      out.push_back(h);
      for (const auto& x : pool) {
        if (h.contains(d, x)) continue;
        if (isotropic) {
          bool ok = true;
          for (const auto& y : h.gens)
            if (d.b(x, y) != 0) {
              ok = false;
              break;
            }
          if (!ok) continue;
        }
        std::vector<DFElement> gens = h.gens;
        gens.push_back(x);
        DFSubgroup g = generate_subgroup(d, gens);
        if (seen.insert(g.elements).second) next.push_back(std::move(g));
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [&](const DFSubgroup& a, const DFSubgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements < b.elements;
  });
  return out;
}

}  // namespace

std::vector<DFSubgroup> all_subgroups(const DiscriminantForm& d, std::int64_t bound) {
  return subgroup_search(d, bound, false);
}

std::vector<DFSubgroup> isotropic_subgroups(const DiscriminantForm& d, std::int64_t bound) {
  return subgroup_search(d, bound, true);
}

DFElement QuotientResult::class_of(const DFElement& x) const {
  auto it = std::lower_bound(perp.elements.begin(), perp.elements.end(), x);
  if (it == perp.elements.end() || *it != x) throw DomainError("element not in I^perp");
  return classes_of_perp[it - perp.elements.begin()];
}

QuotientResult quotient_form(const DiscriminantForm& d, const DFSubgroup& iso) {
  for (const auto& x : iso.elements)
    if (d.q(x) != 0) throw DomainError("quotient_form: subgroup is not isotropic");
  QuotientResult res;
  res.perp = orthogonal_complement(d, iso);
  const std::size_t k = d.generators();
  // Lattice preimages in Z^k.
  auto preimage = [&](const std::vector<DFElement>& gens) {
    ZMatrix m(0, k);
    for (std::size_t i = 0; i < k; ++i) {
      ZVector r(k, Integer(0));
      r[i] = static_cast<long>(d.orders()[i]);
      m.append_row(r);
    }
    for (const auto& g : gens) {
      ZVector r(k);
      for (std::size_t i = 0; i < k; ++i) r[i] = static_cast<long>(g[i]);
      m.append_row(r);
    }
    return hermite_form(m);
  };
  ZMatrix pb = preimage(res.perp.elements.size() > 64 ? res.perp.gens : res.perp.elements);
  ZMatrix ib = preimage(iso.elements);
  QMatrix pinv = inverse(to_rational(pb));
  ZMatrix m = to_integer(to_rational(ib) * pinv);  // I rows in P-coordinates
  SmithForm s = smith_form(m);
  ZMatrix vinv = inverse_unimodular(s.right);
  ZMatrix w = vinv * pb;  // new basis rows of P
  std::vector<std::int64_t> orders;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < k; ++i)
    if (s.diagonal[i] != 1) {
      orders.push_back(s.diagonal[i].get_si());
      keep.push_back(i);
    }
  auto reduce = [&](const ZVector& v) {
    DFElement x(k);
    for (std::size_t i = 0; i < k; ++i) {
      Integer r;
      Integer ord(static_cast<long>(d.orders()[i]));
      mpz_fdiv_r(r.get_mpz_t(), v[i].get_mpz_t(), ord.get_mpz_t());
      x[i] = r.get_si();
    }
    return x;
  };
  for (auto i : keep) res.lifts.push_back(reduce(w.row(i)));
  const std::size_t kq = keep.size();
  QMatrix qg(kq, kq);
  for (std::size_t a = 0; a < kq; ++a)
    for (std::size_t c = 0; c < kq; ++c)
      qg(a, c) = a == c ? d.q(res.lifts[a]) : d.b(res.lifts[a], res.lifts[c]);
  res.form = DiscriminantForm(orders, qg);
  // Classes: coordinates in the W basis are c * pinv * V.
  QMatrix conv = pinv * to_rational(s.right);
  for (const auto& x : res.perp.elements) {
    QVector xv(k);
    for (std::size_t i = 0; i < k; ++i) xv[i] = static_cast<long>(x[i]);
    QVector c = vec_mat(xv, conv);
    DFElement cls(kq);
    for (std::size_t a = 0; a < kq; ++a) {
      Integer r;
      Integer ord(static_cast<long>(orders[a]));
      mpz_fdiv_r(r.get_mpz_t(), c[keep[a]].get_num_mpz_t(), ord.get_mpz_t());
      cls[a] = r.get_si();
    }
    res.classes_of_perp.push_back(cls);
  }
  return res;
}

DiscriminantForm direct_sum(const DiscriminantForm& a, const DiscriminantForm& b) {
  std::vector<std::int64_t> orders = a.orders();
  orders.insert(orders.end(), b.orders().begin(), b.orders().end());
  const std::size_t ka = a.generators(), kb = b.generators();
  QMatrix qg(ka + kb, ka + kb);
  for (std::size_t i = 0; i < ka; ++i)
    for (std::size_t j = 0; j < ka; ++j) qg(i, j) = a.qgram()(i, j);
  for (std::size_t i = 0; i < kb; ++i)
    for (std::size_t j = 0; j < kb; ++j) qg(ka + i, ka + j) = b.qgram()(i, j);
  return DiscriminantForm(orders, qg);
}

DiscriminantForm negated(const DiscriminantForm& d) {
  QMatrix qg = d.qgram().scaled(Rational(-1));
  return DiscriminantForm(d.orders(), qg);
}

std::complex<double> Phase::value() const {
  double r = std::sqrt(magnitude_sq.get_d());
  double a = 2 * std::numbers::pi * angle.get_d();
  return {r * std::cos(a), r * std::sin(a)};
}

WeilMatrices weil_matrices(const DiscriminantForm& d, std::vector<DFElement> order) {
  if (order.empty()) order = d.elements();
  if (static_cast<std::int64_t>(order.size()) != d.size()) throw DomainError("ordering is not a permutation");
  WeilMatrices w;
  const std::size_t n = order.size();
  w.basis = order;
  Rational inv(1, static_cast<long>(n));
  w.s.assign(n, std::vector<Phase>(n));
  w.t.assign(n, std::vector<Phase>(n, Phase{Rational(0), Rational(0)}));
  for (std::size_t i = 0; i < n; ++i) {
    w.t[i][i] = {d.q(order[i]), Rational(1)};
    for (std::size_t j = 0; j < n; ++j) w.s[i][j] = {mod_one(-d.b(order[i], order[j])), inv};
  }
  return w;
}

// ---- symbol dictionary ------------------------------------------------------

namespace {

int jacobi2(std::int64_t u) {
  std::int64_t r = posmod(u, 8);
  return (r == 1 || r == 7) ? 1 : -1;
}

/// Gauss-sum signature of Z/p with q(x) = a x^2 / p.
int cyclic_signature(std::int64_t p, std::int64_t a) {
  return signature_mod8(DiscriminantForm({p}, QMatrix{{Rational(a, p)}}));
}

DiscriminantForm component(std::int64_t base, std::int64_t p, const std::string& type, int sign, int dim) {
  std::vector<std::int64_t> orders;
  std::vector<Rational> diag;
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> off;
  if (p != 2) {
    // Pieces a x^2 / p with Gauss signature minus the p-excess, so that the
    // form of a lattice with p-adic symbol p^{+-n} carries the same symbol.
    if (base != p) throw DomainError("odd prime-power components beyond exponent 1 are not supported");
    std::int64_t ap = 0, am = 0;
    for (std::int64_t a = 1; a < p; ++a) {
      int sg = cyclic_signature(p, a);
      if (!ap && sg == posmod(1 - p, 8)) ap = a;
      if (!am && sg == posmod(1 - p - 4, 8)) am = a;
    }
    for (int i = 0; i < dim; ++i) {
      orders.push_back(base);
      std::int64_t a = (sign < 0 && i == dim - 1) ? am : ap;
      diag.push_back(Rational(a, base));
    }
  } else if (type == "II") {
    if (dim % 2) throw DomainError("type II 2-adic component of odd dimension");
    for (int i = 0; i < dim / 2; ++i) {
      orders.push_back(base);
      orders.push_back(base);
      bool v = sign < 0 && i == dim / 2 - 1;
      diag.push_back(v ? Rational(1, base) : Rational(0));
      diag.push_back(v ? Rational(1, base) : Rational(0));
      off.emplace_back(2 * i, 2 * i + 1, Rational(1, base));
    }
  } else {
    int t = std::stoi(type);
    std::vector<std::int64_t> units(dim, 1);
    const std::int64_t choices[4] = {1, 3, 5, 7};
    bool found = false;
    std::int64_t combos = 1;
    for (int i = 0; i < dim; ++i) combos *= 4;
    for (std::int64_t c = 0; c < combos && !found; ++c) {
      std::int64_t cc = c, sum = 0;
      int eps = 1;
      for (int i = dim; i-- > 0;) {
        units[i] = choices[cc % 4];
        cc /= 4;
      }
      for (auto u : units) {
        sum += u;
        eps *= jacobi2(u);
      }
      found = posmod(sum, 8) == posmod(t, 8) && eps == sign;
    }
    if (!found) throw DomainError("no 2-adic odd component with the requested oddity and sign");
    for (int i = 0; i < dim; ++i) {
      orders.push_back(base);
      diag.push_back(Rational(units[i], 2 * base));
    }
  }
  QMatrix qg(orders.size(), orders.size());
  for (std::size_t i = 0; i < diag.size(); ++i) qg(i, i) = diag[i];
  for (auto& [i, j, v] : off) qg(i, j) = qg(j, i) = v;
  return DiscriminantForm(orders, qg);
}

}  // namespace

DiscriminantForm form_from_symbol(const std::string& symbol) {
  // Parts are separated by braces or spaces, e.g. "2_II^{+2}3^{-8}" or "2_II^+2 3^-8".
  std::string s;
  for (char c : symbol) s += c == '{' ? ' ' : c;
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.find_first_not_of(' ') == std::string::npos || s == "1") return DiscriminantForm({}, QMatrix(0, 0));
  static const std::regex part(R"( *(\d+)(?:_ *(II|\d+))?\^ *([+-])(\d+)\}?)");
  DiscriminantForm out({}, QMatrix(0, 0));
  std::size_t pos = 0;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), part); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    if (static_cast<std::size_t>(m.position()) != pos) throw DomainError("cannot parse form symbol " + symbol);
    pos = m.position() + m.length();
    std::int64_t base = std::stoll(m[1]);
    std::int64_t p = 2;
    while (base % p) ++p;
    for (std::int64_t b = base; b > 1; b /= p)
      if (b % p) throw DomainError("symbol base is not a prime power: " + symbol);
    std::string type = m[2].matched ? m[2].str() : (p == 2 ? "II" : "");
    int sign = m[3] == "+" ? 1 : -1;
    int dim = std::stoi(m[4]);
    out = direct_sum(out, component(base, p, type, sign, dim));
  }
  if (pos != s.size()) throw DomainError("cannot parse form symbol " + symbol);
  return out;
}

std::vector<std::string> known_symbols() {
  return {"1",       "2_II^+2", "2_II^-2", "2_2^+2", "2_6^+2", "4_1^+1", "4_3^-1", "4_5^-1", "4_7^+1",
          "2_II^+4", "2_II^+6", "2_II^+8", "2_II^+10", "2_II^+12"};
}

}  // namespace svoa
