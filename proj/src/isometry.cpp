#include <algorithm>
#include <map>
#include <numeric>

#include "svoa/enumerate.hpp"
#include "svoa/lattice.hpp"

namespace svoa {

namespace {

using I64 = std::int64_t;

/// All vectors (both signs) with norm <= bound, as flat integer coordinates.
struct VectorPool {
  std::size_t n = 0;
  std::vector<I64> coords;
  std::vector<I64> norms;  // scaled by the common denominator
  std::size_t size() const { return norms.size(); }
  const I64* at(std::size_t i) const { return coords.data() + i * n; }
};

VectorPool collect(const Lattice& l, const Rational& bound, I64 den) {
  VectorPool p;
  p.n = l.rank();
  Enumerator e(l.gram());
  auto c = e.prepare({});
  std::vector<I64> x(p.n);
  const I64 scale = den / e.denominator();
  e.run(c, e.scaled_bound(bound, c), true, [&](const I64* z, I64 nrm) {
    if (nrm == 0) return;
    e.to_original_int(z, x.data());
    for (int s : {1, -1}) {
      for (auto v : x) p.coords.push_back(s * v);
      p.norms.push_back(nrm * scale);
    }
  });
  return p;
}

std::vector<I64> scaled_gram(const Lattice& l, I64 den) {
  const std::size_t n = l.rank();
  std::vector<I64> g(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i * n + j] = Rational(l.gram()(i, j) * den).get_num().get_si();
  return g;
}

void gram_times(const std::vector<I64>& g, const I64* x, std::size_t n, I64* out) {
  for (std::size_t i = 0; i < n; ++i) {
    I64 s = 0;
    for (std::size_t j = 0; j < n; ++j) s += g[i * n + j] * x[j];
    out[i] = s;
  }
}

I64 dot64(const I64* a, const I64* b, std::size_t n) {
  I64 s = 0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

/// Greedily pick short vectors forming a basis of Z^n (in lattice
/// coordinates), keeping the partial system primitive at every step.
std::vector<std::vector<I64>> short_basis(const VectorPool& pool, std::size_t n) {
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pool.norms[a] < pool.norms[b]; });
  ZMatrix w = ZMatrix::identity(n);
  ZMatrix winv = ZMatrix::identity(n);
  std::vector<std::vector<I64>> basis;
  std::size_t k = 0;
  for (std::size_t idx : order) {
    if (k == n) break;
    const I64* v = pool.at(idx);
    ZVector a(n, Integer(0));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        if (v[i]) a[j] += Integer(static_cast<long>(v[i])) * winv(i, j);
    Integer g = 0;
    for (std::size_t j = k; j < n; ++j) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a[j].get_mpz_t());
    if (g != 1) continue;
    const std::size_t m = n - k;
    ZMatrix t(1, m);
    for (std::size_t j = 0; j < m; ++j) t(0, j) = a[k + j];
    SmithForm s = smith_form(t);
    ZMatrix q = s.right;  // t * q = (+-1, 0, ..., 0)
    if (s.left(0, 0) * s.diagonal[0] < 0)
      for (std::size_t i = 0; i < m; ++i) q(i, 0) = -q(i, 0);
    ZMatrix pmat = inverse_unimodular(q);  // first row equals t
    ZMatrix trailing(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) trailing(i, j) = w(k + i, j);
    ZMatrix nt = pmat * trailing;
    for (std::size_t j = 0; j < n; ++j) w(k, j) = v[j];
    for (std::size_t i = 1; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) w(k + i, j) = nt(i, j);
    winv = inverse_unimodular(w);
    basis.emplace_back(v, v + n);
    ++k;
  }
  if (k < n) return {};
  return basis;
}

struct Search {
  std::size_t n;
  std::vector<std::vector<I64>> s;      // source basis vectors
  std::vector<I64> target_ip;           // scaled <s_i, s_j>
  std::vector<std::vector<std::size_t>> initial;  // candidates per level
  const VectorPool* pool;
  std::vector<I64> g2;
  std::vector<std::size_t> chosen;

  bool rec(std::size_t level, std::vector<std::vector<std::size_t>>& cands) {
    if (level == n) return true;
    std::vector<I64> w(n);
    for (std::size_t c : cands[level]) {
      gram_times(g2, pool->at(c), n, w.data());
      std::vector<std::vector<std::size_t>> next(n);
      bool ok = true;
      for (std::size_t j = level + 1; j < n && ok; ++j) {
        const I64 want = target_ip[j * n + level];
        next[j].reserve(cands[j].size() / 4 + 1);
        for (std::size_t x : cands[j])
          if (x != c && dot64(pool->at(x), w.data(), n) == want) next[j].push_back(x);
        ok = !next[j].empty();
      }
      if (!ok) continue;
      chosen[level] = c;
      if (rec(level + 1, next)) return true;
    }
    return false;
  }
};

}  // namespace

std::optional<Isometry> is_isometric(const Lattice& a, const Lattice& b) {
  return is_isometric(a, b, fingerprint(a), fingerprint(b));
}

std::optional<Isometry> is_isometric(const Lattice& a, const Lattice& b, const Fingerprint& fa,
                                     const Fingerprint& fb) {
  if (!(fa == fb)) return std::nullopt;
  const std::size_t n = a.rank();
  if (n == 0) return Isometry{QMatrix(0, 0)};
  if (a.gram() == b.gram()) return Isometry::identity(n);

  Integer dl = lcm_of_denominators(a.gram());
  mpz_lcm(dl.get_mpz_t(), dl.get_mpz_t(), lcm_of_denominators(b.gram()).get_mpz_t());
  if (!dl.fits_slong_p()) throw DomainError("denominator too large for isometry search");
  const I64 den = dl.get_si();

  // Source basis of short vectors.
  Rational bound = a.gram()(0, 0);
  for (std::size_t i = 0; i < n; ++i) bound = std::min(bound, a.gram()(i, i));
  Embedded red = lll_reduce(a);
  Rational maxdiag = 0;
  for (std::size_t i = 0; i < n; ++i) maxdiag = std::max(maxdiag, red.lattice.gram()(i, i));
  std::vector<std::vector<I64>> basis;
  for (Rational nb = std::min(bound, maxdiag); basis.empty(); nb += 1) {
    if (nb > maxdiag) nb = maxdiag;
    basis = short_basis(collect(a, nb, den), n);
    if (nb == maxdiag) break;
  }
  if (basis.empty()) {
    // LLL basis itself is always available.
    ZMatrix t = to_integer(red.basis);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<I64> v(n);
      for (std::size_t j = 0; j < n; ++j) v[j] = t(i, j).get_si();
      basis.push_back(v);
    }
  }
  std::vector<I64> g1 = scaled_gram(a, den), g2 = scaled_gram(b, den);
  std::vector<I64> snorm(n);
  std::vector<I64> tmp(n);
  for (std::size_t i = 0; i < n; ++i) {
    gram_times(g1, basis[i].data(), n, tmp.data());
    snorm[i] = dot64(basis[i].data(), tmp.data(), n);
  }
  // Order: connected to already chosen vectors first, shorter first.
  std::vector<std::size_t> order;
  std::vector<bool> used(n, false);
  auto ip = [&](std::size_t i, std::size_t j) {
    gram_times(g1, basis[j].data(), n, tmp.data());
    return dot64(basis[i].data(), tmp.data(), n);
  };
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    long best_links = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      long links = 0;
      for (auto j : order) links += ip(i, j) != 0;
      if (best == n || links > best_links || (links == best_links && snorm[i] < snorm[best])) {
        best = i;
        best_links = links;
      }
    }
    used[best] = true;
    order.push_back(best);
  }
  Search s;
  s.n = n;
  for (auto i : order) s.s.push_back(basis[i]);
  s.target_ip.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      gram_times(g1, s.s[j].data(), n, tmp.data());
      s.target_ip[i * n + j] = dot64(s.s[i].data(), tmp.data(), n);
    }
  I64 maxnorm = *std::max_element(snorm.begin(), snorm.end());
  Rational pool_norm(maxnorm, den);
  pool_norm.canonicalize();
  VectorPool pool_b = collect(b, pool_norm, den);
  VectorPool pool_a = collect(a, pool_norm, den);

  // Invariant: histogram of inner products with the minimal vectors.
  auto profiles = [&](const VectorPool& p, const std::vector<I64>& g, std::vector<std::size_t> subset) {
    std::map<std::size_t, std::vector<I64>> out;
    I64 mn = p.size() ? *std::min_element(p.norms.begin(), p.norms.end()) : 0;
    std::vector<std::size_t> mins;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p.norms[i] == mn) mins.push_back(i);
    std::vector<I64> gm(mins.size() * n);
    for (std::size_t k = 0; k < mins.size(); ++k) gram_times(g, p.at(mins[k]), n, gm.data() + k * n);
    const bool cheap = mins.size() * subset.size() <= 60'000'000;
    for (auto i : subset) {
      std::vector<I64> h;
      if (cheap) {
        std::map<I64, I64> hist;
        for (std::size_t k = 0; k < mins.size(); ++k) ++hist[std::abs(dot64(p.at(i), gm.data() + k * n, n))];
        for (auto [v, c] : hist) {
          h.push_back(v);
          h.push_back(c);
        }
      }
      out[i] = std::move(h);
    }
    return out;
  };
  std::vector<std::size_t> all_b(pool_b.size());
  std::iota(all_b.begin(), all_b.end(), 0);
  auto prof_b = profiles(pool_b, g2, all_b);
  // Profiles of the source basis vectors: locate them inside pool_a.
  std::vector<std::size_t> src_idx(n, pool_a.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < pool_a.size(); ++k)
      if (std::equal(s.s[i].begin(), s.s[i].end(), pool_a.at(k))) {
        src_idx[i] = k;
        break;
      }
  auto prof_a = profiles(pool_a, g1, src_idx);
  std::vector<std::vector<std::size_t>> cands(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < pool_b.size(); ++k)
      if (pool_b.norms[k] == s.target_ip[i * n + i] && prof_b[k] == prof_a[src_idx[i]])
        cands[i].push_back(k);
  for (auto& c : cands)
    if (c.empty()) return std::nullopt;
  s.pool = &pool_b;
  s.g2 = g2;
  s.chosen.assign(n, 0);
  if (!s.rec(0, cands)) return std::nullopt;

  QMatrix smat(n, n), cmat(n, n);  // columns
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      smat(j, i) = static_cast<long>(s.s[i][j]);
      cmat(j, i) = static_cast<long>(pool_b.at(s.chosen[i])[j]);
    }
  Isometry iso{cmat * inverse(smat)};
  for (const auto& x : iso.matrix.data())
    if (!is_integer(x)) return std::nullopt;
  if (!iso.verify(a, b)) return std::nullopt;
  return iso;
}

}  // namespace svoa
