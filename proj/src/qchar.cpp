#include "svoa/qchar.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "svoa/discform.hpp"

namespace svoa {

// ---- QSeries ------------------------------------------------------------------

QSeries QSeries::constant(const Rational& c, const Rational& prec) { return monomial(c, 0, prec); }

QSeries QSeries::monomial(const Rational& c, const Rational& exponent, const Rational& prec) {
  QSeries s(prec);
  if (exponent < prec) s.add_term(exponent, c);
  return s;
}

Integer QSeries::denom() const {
  Integer d = 1;
  for (const auto& [e, c] : terms_) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), e.get_den_mpz_t());
  return d;
}

Rational QSeries::coeff(const Rational& exponent) const {
  if (exponent >= prec_) throw DomainError("coefficient beyond the series precision");
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational QSeries::valuation() const { return terms_.empty() ? prec_ : terms_.begin()->first; }

void QSeries::add_term(const Rational& exponent, const Rational& c) {
  if (exponent >= prec_ || c == 0) return;
  auto [it, inserted] = terms_.emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

QSeries QSeries::truncated(const Rational& prec) const {
  QSeries s(std::min(prec, prec_));
  for (const auto& [e, c] : terms_) {
    if (e >= s.prec_) break;
    s.terms_.emplace(e, c);
  }
  return s;
}

QSeries QSeries::substituted(const Rational& f) const {
  if (f <= 0) throw DomainError("substitution needs a positive exponent factor");
  QSeries s(prec_ * f);
  for (const auto& [e, c] : terms_) s.terms_.emplace(e * f, c);
  return s;
}

QSeries QSeries::shifted(const Rational& e) const {
  QSeries s(prec_ + e);
  for (const auto& [x, c] : terms_) s.terms_.emplace(x + e, c);
  return s;
}

QSeries QSeries::inverse() const {
  if (terms_.empty()) throw DomainError("inverse of a series with no known nonzero term");
  const Rational v = valuation();
  const Rational rel = prec_ - v;  // relative precision
  const Rational a0 = terms_.begin()->second;
  // Normalised u = (s / (a0 q^v)) = 1 + higher; invert term by term.
  std::vector<std::pair<Rational, Rational>> u;
  for (const auto& [e, c] : terms_)
    if (e != v) u.emplace_back(e - v, c / a0);
  QSeries inv(rel);
  inv.terms_.emplace(Rational(0), Rational(1));
  // Exponents of the inverse lie in the additive monoid generated by the
  // exponents of u; process them in increasing order.
  std::map<Rational, Rational> pending;
  for (const auto& [e, c] : u)
    if (e < rel) pending.emplace(e, 0);
  while (!pending.empty()) {
    auto [e, dummy] = *pending.begin();
    pending.erase(pending.begin());
    Rational acc = 0;
    for (const auto& [ue, uc] : u) {
      if (ue > e) break;
      auto it = inv.terms_.find(e - ue);
      if (it != inv.terms_.end()) acc -= uc * it->second;
    }
    if (acc != 0) inv.terms_.emplace(e, acc);
    for (const auto& [ue, uc] : u) {
      Rational next = e + ue;
      if (next >= rel) break;
      if (!inv.terms_.count(next)) pending.emplace(next, 0);
    }
  }
  return inv.shifted(-v) * Rational(1 / a0);
}

QSeries QSeries::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  if (e == 0) return constant(1, prec_ - valuation());
  QSeries result;
  QSeries base = *this;
  bool first = true;
  while (e > 0) {
    if (e & 1) {
      result = first ? base : result * base;
      first = false;
    }
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

QSeries QSeries::operator+(const QSeries& o) const {
  QSeries s(std::min(prec_, o.prec_));
  for (const auto& [e, c] : terms_) s.add_term(e, c);
  for (const auto& [e, c] : o.terms_) s.add_term(e, c);
  return s;
}

QSeries QSeries::operator-() const {
  QSeries s = *this;
  for (auto& [e, c] : s.terms_) c = -c;
  return s;
}

QSeries QSeries::operator-(const QSeries& o) const { return *this + (-o); }

QSeries QSeries::operator*(const QSeries& o) const {
  const Rational prec = std::min(prec_ + o.valuation(), o.prec_ + valuation());
  QSeries s(prec);
  for (const auto& [e1, c1] : terms_) {
    if (e1 + o.valuation() >= prec) break;
    for (const auto& [e2, c2] : o.terms_) {
      Rational e = e1 + e2;
      if (e >= prec) break;
      s.add_term(e, c1 * c2);
    }
  }
  return s;
}

QSeries QSeries::operator*(const Rational& c) const {
  QSeries s(prec_);
  if (c == 0) return s;
  for (const auto& [e, x] : terms_) s.terms_.emplace(e, x * c);
  return s;
}

bool QSeries::agrees_with(const QSeries& o) const {
  const Rational p = std::min(prec_, o.prec_);
  return truncated(p).terms_ == o.truncated(p).terms_;
}

std::string QSeries::to_string() const {
  std::ostringstream os;
  const Integer n = denom();
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    Rational scaled = e * n;
    os << c << " * q^(" << scaled << "/" << n << ")";
  }
  if (first) os << "0";
  os << " + O(q^(" << prec_ << "))";
  return os.str();
}

std::string QSeries::to_json() const {
  nlohmann::json j;
  const Integer n = denom();
  j["denom"] = n.get_str();
  j["prec"] = prec_.get_str();
  j["terms"] = nlohmann::json::array();
  for (const auto& [e, c] : terms_)
    j["terms"].push_back({e.get_num().get_str(), e.get_den().get_str(), c.get_num().get_str(), c.get_den().get_str()});
  return j.dump();
}

// ---- eta quotients and theta series ---------------------------------------------

namespace {

/// Coefficients of prod_{n >= 1} (1 - x^n)^e below x^len.
std::vector<Integer> euler_power(long e, std::size_t len) {
  std::vector<Integer> a(len, Integer(0));
  if (len == 0) return a;
  // Pentagonal number theorem.
  for (long k = 0;; ++k) {
    bool any = false;
    for (long s : {k, -k}) {
      if (k == 0 && s < 0) continue;
      long p = s * (3 * s - 1) / 2;
      if (p < 0 || static_cast<std::size_t>(p) >= len) continue;
      a[p] = (k % 2 == 0) ? 1 : -1;
      any = true;
    }
    if (!any && k > 0 && k * (3 * k - 1) / 2 >= static_cast<long>(len)) break;
  }
  // Power by the recurrence n b_n = sum_k ((e + 1) k - n) a_k b_{n-k}.
  std::vector<Integer> b(len, Integer(0));
  b[0] = 1;
  for (std::size_t n = 1; n < len; ++n) {
    Integer acc = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      if (a[k] == 0) continue;
      acc += Integer((e + 1) * static_cast<long>(k) - static_cast<long>(n)) * a[k] * b[n - k];
    }
    b[n] = acc / static_cast<long>(n);
  }
  return b;
}

}  // namespace

QSeries eta_quotient(const std::vector<EtaFactor>& spec, const Rational& prec) {
  Rational lead = 0;
  for (const auto& f : spec) {
    if (f.scale <= 0) throw DomainError("eta argument scale must be positive");
    lead += f.scale * f.exponent / 24;
  }
  const Rational rel = prec - lead;
  if (rel <= 0) throw DomainError("precision does not exceed the leading exponent");
  QSeries product = QSeries::constant(1, rel);
  for (const auto& f : spec) {
    if (f.exponent == 0) continue;
    Rational steps = rel / f.scale;
    auto len = static_cast<std::size_t>(ceil_of(steps).get_si());
    std::vector<Integer> b = euler_power(f.exponent, len);
    QSeries s(rel);
    for (std::size_t k = 0; k < len; ++k) s.add_term(f.scale * static_cast<long>(k), b[k]);
    product = product * s;
  }
  return product.shifted(lead);
}

QSeries theta_series(const Lattice& l, const LatticeVector& rep, const Rational& prec) {
  QSeries s(prec);
  if (prec <= 0) return s;
  if (l.rank() == 0) return QSeries::constant(1, prec);
  for (const auto& [nrm, count] : norm_counts(l, prec * 2, rep)) s.add_term(nrm / 2, Rational(Integer(std::to_string(count))));
  return s;
}

namespace {

using I64 = std::int64_t;

/// Mutually orthogonal vectors of the lattice (its own coordinates) forming a
/// basis of a full-rank sublattice, or empty.
std::vector<LatticeVector> orthogonal_frame(const Lattice& p) {
  const std::size_t n = p.rank();
  Rational bound = minimum_norm(p);
  for (int attempt = 0; attempt < 3; ++attempt, bound *= 2) {
    std::vector<LatticeVector> cand = short_vectors(p, bound);
    if (cand.size() > 20000) break;
    std::vector<QVector> gc;
    for (auto& c : cand) gc.push_back(mat_vec(p.gram(), c));
    std::vector<std::size_t> chosen;
    long budget = 200000;
    std::function<bool(std::size_t)> dfs = [&](std::size_t start) -> bool {
      if (chosen.size() == n) return true;
      if (--budget < 0) return false;
      for (std::size_t i = start; i < cand.size(); ++i) {
        if (cand.size() - i < n - chosen.size()) return false;
        bool ok = true;
        for (auto j : chosen)
          if (dot(cand[i], gc[j]) != 0) {
            ok = false;
            break;
          }
        if (!ok) continue;
        chosen.push_back(i);
        if (dfs(i + 1)) return true;
        chosen.pop_back();
        if (budget < 0) return false;
      }
      return false;
    };
    if (dfs(0)) {
      std::vector<LatticeVector> out;
      for (auto i : chosen) out.push_back(cand[i]);
      return out;
    }
  }
  return {};
}

}  // namespace

std::vector<QSeries> coset_thetas(const Lattice& k, const Rational& prec) {
  if (!k.is_even()) throw DomainError("coset_thetas requires an even lattice");
  DiscResult disc = discriminant_form(k);
  const std::size_t g = static_cast<std::size_t>(disc.form.size());
  const std::size_t n = k.rank();
  std::vector<QSeries> out(g, QSeries(prec));
  if (prec <= 0) return out;
  auto direct = [&]() {
    for (std::size_t i = 0; i < g; ++i) out[i] = theta_series(k, disc.lift(disc.form.element(static_cast<I64>(i))), prec);
    return out;
  };
  if (n == 0) return direct();

  DualResult dual = dual_lattice(k);
  std::vector<LatticeVector> frame_p = orthogonal_frame(dual.dual);
  if (frame_p.empty()) return direct();
  ZMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = frame_p[i][j].get_num();
  SmithForm snf = smith_form(m);
  Integer classes = 1;
  for (auto& d : snf.diagonal) classes *= d;
  if (classes > (1 << 20)) return direct();
  ZMatrix vinv = inverse_unimodular(snf.right);

  std::vector<LatticeVector> frame;  // K coordinates
  std::vector<Rational> fnorm;
  std::vector<std::size_t> fgrade;
  for (auto& f : frame_p) {
    frame.push_back(vec_mat(f, dual.basis));
    fnorm.push_back(k.norm(frame.back()));
    fgrade.push_back(static_cast<std::size_t>(disc.form.index_of(disc.class_of(k, frame.back()))));
  }
  // Group law on grades.
  std::vector<std::vector<std::size_t>> add(g, std::vector<std::size_t>(g));
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b)
      add[a][b] = static_cast<std::size_t>(
          disc.form.index_of(disc.form.add(disc.form.element(static_cast<I64>(a)), disc.form.element(static_cast<I64>(b)))));
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i)
    order[i] = static_cast<std::size_t>(disc.form.order_of(disc.form.element(static_cast<I64>(fgrade[i]))));

  // One-dimensional factors: offset c along f_i, split by k mod order.
  struct Factor {
    std::vector<std::vector<std::pair<Rational, I64>>> by_residue;  // exponent, multiplicity
  };
  std::map<std::pair<std::size_t, Rational>, Factor> cache;
  auto factor = [&](std::size_t i, const Rational& c) -> const Factor& {
    auto key = std::make_pair(i, c);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Factor f;
    f.by_residue.resize(order[i]);
    const Rational a = fnorm[i] / 2;
    // (c + t)^2 a < prec  <=>  |c + t| < sqrt(prec / a).
    const double r = std::sqrt(Rational(prec / a).get_d()) + 1;
    const long lo = static_cast<long>(std::floor(-c.get_d() - r)), hi = static_cast<long>(std::ceil(-c.get_d() + r));
    for (long t = lo; t <= hi; ++t) {
      Rational x = c + t;
      Rational e = x * x * a;
      if (e >= prec) continue;
      long res = ((t % static_cast<long>(order[i])) + static_cast<long>(order[i])) % static_cast<long>(order[i]);
      f.by_residue[res].push_back({e, 1});
    }
    return cache.emplace(key, std::move(f)).first->second;
  };

  // Enumerate classes of K'/F: x = y V^{-1}, y in prod [0, d_i).
  struct ClassData {
    std::size_t grade;
    std::vector<Rational> offsets;
  };
  std::vector<ClassData> data;
  Integer den = 1;
  std::vector<long> dims;
  for (auto& d : snf.diagonal) dims.push_back(d.get_si());
  std::vector<long> y(n, 0);
  for (;;) {
    QVector xp(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
      if (y[i])
        for (std::size_t j = 0; j < n; ++j) xp[j] += Rational(y[i]) * vinv(i, j);
    QVector xk = vec_mat(xp, dual.basis);
    ClassData cd;
    cd.grade = static_cast<std::size_t>(disc.form.index_of(disc.class_of(k, xk)));
    QVector gx = mat_vec(k.gram(), xk);
    for (std::size_t i = 0; i < n; ++i) {
      Rational c = dot(frame[i], gx) / fnorm[i];
      cd.offsets.push_back(c);
      for (auto& v : factor(i, c).by_residue)
        for (auto& [e, mult] : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e.get_den_mpz_t());
    }
    data.push_back(std::move(cd));
    std::size_t pos = 0;
    while (pos < n && ++y[pos] == dims[pos]) y[pos++] = 0;
    if (pos == n) break;
  }
  if (!den.fits_slong_p()) return direct();
  const long dl = den.get_si();
  const Integer len_z = ceil_of(prec * dl);
  const auto len = static_cast<std::size_t>(len_z.get_si());
  auto scaled = [&](const Rational& e) { return static_cast<std::size_t>(Rational(e * dl).get_num().get_si()); };

  std::vector<std::vector<I64>> total(g, std::vector<I64>(len, 0));
  std::vector<std::vector<I64>> state(g), next(g);
  for (const auto& cd : data) {
    for (auto& s : state) s.assign(len, 0);
    state[cd.grade][0] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& s : next) s.assign(len, 0);
      const Factor& f = factor(i, cd.offsets[i]);
      for (std::size_t gr = 0; gr < g; ++gr) {
        const auto& src = state[gr];
        std::size_t top = len;
        while (top > 0 && src[top - 1] == 0) --top;
        if (top == 0) continue;
        std::size_t shift_grade = gr;
        for (std::size_t r = 0; r < f.by_residue.size(); ++r) {
          auto& dst = next[shift_grade];
          for (const auto& [e, mult] : f.by_residue[r]) {
            const std::size_t off = scaled(e);
            for (std::size_t t = 0; t < top && t + off < len; ++t)
              if (src[t]) dst[t + off] += src[t] * mult;
          }
          shift_grade = add[shift_grade][fgrade[i]];
        }
      }
      std::swap(state, next);
    }
    for (std::size_t gr = 0; gr < g; ++gr)
      for (std::size_t t = 0; t < len; ++t) total[gr][t] += state[gr][t];
  }
  for (std::size_t gr = 0; gr < g; ++gr)
    for (std::size_t t = 0; t < len; ++t)
      if (total[gr][t]) {
        Rational e(static_cast<long>(t), dl);
        e.canonicalize();
        out[gr].add_term(e, Rational(Integer(std::to_string(total[gr][t]))));
      }
  return out;
}

// ---- the c = 24 character basis -------------------------------------------------

bool agrees(const VectorForm4& a, const VectorForm4& b) {
  for (std::size_t i = 0; i < 4; ++i)
    if (!a[i].agrees_with(b[i])) return false;
  return true;
}

bool CharacterParams::admissible() const {
  return l >= 0 && l <= 48 && a >= 24 * l && b >= 24 * l && a + b >= 24 * (l + 1);
}

namespace {

const Rational kHalf(1, 2);

}  // namespace

VectorForm4 build_basis_F(const Rational& prec) {
  // Components f + f_+, f_+, f_+, f_- with f = (eta(t)/eta(2t))^24 and
  // f_{+-} = 2^11 (A -+ B).
  const Rational p = prec;
  QSeries f = eta_quotient({{1, 24}, {2, -24}}, p);
  QSeries a = eta_quotient({{1, 24}, {kHalf, -24}}, p);
  QSeries b = eta_quotient({{kHalf, 24}, {2, 24}, {1, -48}}, p);
  QSeries fp = (a - b) * Rational(2048);
  QSeries fm = (a + b) * Rational(2048);
  return {(f + fp).truncated(p), fp.truncated(p), fp.truncated(p), fm.truncated(p)};
}

VectorForm4 build_basis_G(const Rational& prec) {
  const Rational p = prec;
  QSeries g = eta_quotient({{2, 24}, {1, -24}}, p) * Rational(4096);
  QSeries c = eta_quotient({{kHalf, 24}, {1, -24}}, p);
  QSeries d = eta_quotient({{1, 48}, {kHalf, -24}, {2, -24}}, p);
  QSeries gp = (c - d) * kHalf;
  QSeries gm = (c + d) * kHalf;
  return {(g + gp).truncated(p), gp.truncated(p), gp.truncated(p), gm.truncated(p)};
}

VectorForm4 assemble_character(const CharacterParams& prm, const Rational& prec) {
  VectorForm4 f = build_basis_F(prec), g = build_basis_G(prec);
  VectorForm4 out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = f[i] + g[i] * Rational(prm.l);
  out[0] = out[0] + QSeries::constant(Rational(prm.a + prm.b), prec);
  out[1] = out[1] + QSeries::constant(Rational(prm.a), prec);
  out[2] = out[2] + QSeries::constant(Rational(prm.b), prec);
  return out;
}

CharacterParams abl_from_dims(long d0, long w1, long w2) {
  if (d0 < 0 || w1 < 0 || w2 < 0) throw DomainError("dimensions must be nonnegative");
  const long num = 24 + 3 * d0 - w1 - w2;
  if (num % 24 != 0) throw DomainError("dimension triple gives a non-integral l");
  CharacterParams p{24 + 2 * d0 - w1, 24 + 2 * d0 - w2, num / 24};
  if (!p.admissible()) throw DomainError("dimension triple violates the character constraints");
  return p;
}

std::optional<CoefficientViolation> check_nonnegative_integral(const VectorForm4& ch) {
  for (std::size_t i = 0; i < 4; ++i)
    for (const auto& [e, c] : ch[i].terms())
      if (c < 0 || !is_integer(c)) return CoefficientViolation{i, e, c};
  return std::nullopt;
}

OddLatticeCharacter character_from_odd_lattice(const Lattice& l, const Rational& prec) {
  if (l.rank() != 24 || !l.is_integral() || l.det() != 1 || l.is_even())
    throw DomainError("character_from_odd_lattice requires an odd unimodular lattice of rank 24");
  EvenSublattice es = even_sublattice(l);
  const Lattice& k = es.sublattice.lattice;
  DiscResult disc = discriminant_form(k);
  if (disc.form.size() != 4) throw std::logic_error("even part has the wrong discriminant");
  std::vector<QSeries> th = coset_thetas(k, prec + 1);
  QSeries eta = eta_quotient({{1, -24}}, prec);
  OddLatticeCharacter out;
  out.even_part = k;
  std::size_t slot = 1;
  for (std::size_t i = 0; i < 4; ++i) {
    DFElement x = disc.form.element(static_cast<std::int64_t>(i));
    QSeries comp = (th[i] * eta).truncated(prec);
    if (i == 0) {
      out.ch[0] = comp;
    } else if (disc.form.q(x) == 0) {
      out.neighbours[slot - 1] = glue_extension(k, {disc.lift(x)}, true).lattice;
      out.ch[slot++] = comp;
    } else {
      out.ch[3] = comp;
    }
  }
  return out;
}

// ---- numerics -----------------------------------------------------------------------

std::complex<double> numeric_eval(const QSeries& s, std::complex<double> tau) {
  if (tau.imag() <= 0) throw DomainError("tau must lie in the upper half plane");
  std::complex<double> acc = 0;
  const std::complex<double> two_pi_i(0.0, 2 * std::numbers::pi);
  for (const auto& [e, c] : s.terms()) acc += c.get_d() * std::exp(two_pi_i * e.get_d() * tau);
  return acc;
}

double s_transform_residual(const VectorForm4& ch, std::complex<double> tau) {
  WeilMatrices w = weil_matrices(form_from_symbol("2_II^+2"));
  std::array<std::complex<double>, 4> at, image;
  for (std::size_t i = 0; i < 4; ++i) {
    at[i] = numeric_eval(ch[i], tau);
    image[i] = numeric_eval(ch[i], -1.0 / tau);
  }
  double worst = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    std::complex<double> rhs = 0;
    for (std::size_t j = 0; j < 4; ++j) rhs += w.s[i][j].value() * at[j];
    worst = std::max(worst, std::abs(image[i] - rhs));
  }
  return worst;
}

double t_transform_residual(const VectorForm4& ch, std::complex<double> tau) {
  WeilMatrices w = weil_matrices(form_from_symbol("2_II^+2"));
  double worst = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    std::complex<double> lhs = numeric_eval(ch[i], tau + 1.0);
    std::complex<double> rhs = w.t[i][i].value() * numeric_eval(ch[i], tau);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace svoa
