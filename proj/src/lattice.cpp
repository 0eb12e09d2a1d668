#include "svoa/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "svoa/enumerate.hpp"

namespace svoa {

Lattice::Lattice(QMatrix gram, std::string name) : gram_(std::move(gram)), name_(std::move(name)) {
  if (!gram_.square()) throw DomainError("Gram matrix must be square");
  if (!is_positive_definite(gram_)) throw DomainError("Gram matrix is not positive definite");
}

Rational Lattice::det() const { return determinant(gram_); }

bool Lattice::is_integral() const {
  for (const auto& v : gram_.data())
    if (!is_integer(v)) return false;
  return true;
}

bool Lattice::is_even() const {
  if (!is_integral()) return false;
  for (std::size_t i = 0; i < rank(); ++i)
    if (gram_(i, i).get_num() % 2 != 0) return false;
  return true;
}

bool Isometry::verify(const Lattice& source, const Lattice& target) const {
  if (matrix.rows() != target.rank() || matrix.cols() != source.rank()) return false;
  return matrix.transpose() * target.gram() * matrix == source.gram();
}

std::size_t root_count_of(const RootComponent& c) {
  const std::size_t n = c.rank;
  switch (c.series) {
    case 'A': return n * (n + 1);
    case 'D': return 2 * n * (n - 1);
    case 'E': return n == 6 ? 72 : n == 7 ? 126 : 240;
  }
  return 0;
}

std::string RootSystemDesc::name() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < components.size();) {
    std::size_t j = i;
    while (j < components.size() && components[j] == components[i]) ++j;
    os << components[i].series << components[i].rank;
    if (j - i > 1) os << '^' << (j - i);
    i = j;
  }
  return os.str();
}

// ---- constructors -----------------------------------------------------------

Lattice make_lattice(char kind, int rank) {
  auto bad = [&] {
    return DomainError(std::string("no lattice of kind ") + kind + " and rank " + std::to_string(rank));
  };
  if (rank < 1) throw bad();
  const std::size_t n = rank;
  QMatrix g(n, n);
  std::string name = std::string(1, kind) + std::to_string(rank);
  switch (kind) {
    case 'Z':
      g = QMatrix::identity(n);
      name = rank == 1 ? "Z" : "Z^" + std::to_string(rank);
      break;
    case 'A':
      for (std::size_t i = 0; i < n; ++i) {
        g(i, i) = 2;
        if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = -1;
      }
      break;
    case 'D': {
      if (rank < 2) throw bad();
      QMatrix b(n, n);
      for (std::size_t i = 0; i + 1 < n; ++i) {
        b(i, i) = 1;
        b(i, i + 1) = -1;
      }
      b(n - 1, n - 2) = 1;
      b(n - 1, n - 1) = 1;
      g = b * b.transpose();
      break;
    }
    case 'E': {
      if (rank < 6 || rank > 8) throw bad();
      // Bourbaki labelling: chain 1-3-4-5-...-n with node 2 attached to 4.
      std::vector<std::pair<int, int>> edges = {{1, 3}, {3, 4}, {4, 5}, {2, 4}};
      for (int k = 5; k < rank; ++k) edges.push_back({k, k + 1});
      for (std::size_t i = 0; i < n; ++i) g(i, i) = 2;
      for (auto [a, b] : edges) g(a - 1, b - 1) = g(b - 1, a - 1) = -1;
      break;
    }
    default:
      throw bad();
  }
  return Lattice(g, name);
}

Lattice rescale(const Lattice& l, const Integer& m) {
  if (m <= 0) throw DomainError("rescaling factor must be positive");
  return Lattice(l.gram().scaled(Rational(m)), l.name().empty() ? "" : l.name() + "(" + m.get_str() + ")");
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
  const std::size_t n = a.rank(), m = b.rank();
  QMatrix g(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram()(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram()(i, j);
  std::string name;
  if (!a.name().empty() && !b.name().empty()) name = a.name() + b.name();
  return Lattice(g, name);
}

DualResult dual_lattice(const Lattice& l) {
  QMatrix inv = l.rank() ? inverse(l.gram()) : QMatrix();
  return {Lattice(inv, l.name().empty() ? "" : l.name() + "'"), inv};
}

ZMatrix lll_transform(const QMatrix& gram) {
  const std::size_t n = gram.rows();
  ZMatrix h = ZMatrix::identity(n);
  if (n <= 1) return h;
  QMatrix a = gram;
  QMatrix mu(n, n);
  QVector bstar(n);
  const Rational delta(3, 4);
  const Rational half(1, 2);

  auto red = [&](std::size_t k, std::size_t l) {
    if (abs(mu(k, l)) <= half) return;
    Rational shifted = mu(k, l) + half;
    Integer q = floor_of(shifted);
    Rational qq(q);
    for (std::size_t j = 0; j < n; ++j) h(k, j) -= q * h(l, j);
    Rational akk = a(k, k) - 2 * qq * a(k, l) + qq * qq * a(l, l);
    for (std::size_t i = 0; i < n; ++i)
      if (i != k) a(k, i) -= qq * a(l, i);
    a(k, k) = akk;
    for (std::size_t i = 0; i < n; ++i) a(i, k) = a(k, i);
    mu(k, l) -= qq;
    for (std::size_t i = 0; i < l; ++i) mu(k, i) -= qq * mu(l, i);
  };

  std::size_t k = 1, kmax = 0;
  bstar[0] = a(0, 0);
  while (k < n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 0; j <= k; ++j) {
        Rational s = a(k, j);
        for (std::size_t i = 0; i < j; ++i) s -= mu(j, i) * mu(k, i) * bstar[i];
        if (j < k) mu(k, j) = s / bstar[j];
        else bstar[k] = s;
      }
    }
    red(k, k - 1);
    if (bstar[k] < (delta - mu(k, k - 1) * mu(k, k - 1)) * bstar[k - 1]) {
      // swap k and k-1
      h.swap_rows(k, k - 1);
      a.swap_rows(k, k - 1);
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k), a(i, k - 1));
      for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu(k, j), mu(k - 1, j));
      Rational m = mu(k, k - 1);
      Rational bn = bstar[k] + m * m * bstar[k - 1];
      mu(k, k - 1) = m * bstar[k - 1] / bn;
      bstar[k] = bstar[k - 1] * bstar[k] / bn;
      bstar[k - 1] = bn;
      for (std::size_t i = k + 1; i <= kmax; ++i) {
        Rational t = mu(i, k);
        mu(i, k) = mu(i, k - 1) - m * t;
        mu(i, k - 1) = t + mu(k, k - 1) * mu(i, k);
      }
      if (k > 1) --k;
      continue;
    }
    for (std::size_t l = k - 1; l-- > 0;) red(k, l);
    ++k;
  }
  return h;
}

Embedded lll_reduce(const Lattice& l) {
  ZMatrix t = lll_transform(l.gram());
  QMatrix tq = to_rational(t);
  return {Lattice(tq * l.gram() * tq.transpose(), l.name()), tq};
}

Embedded span_of(const Lattice& ambient, const QMatrix& gens) {
  const std::size_t n = ambient.rank();
  if (gens.rows() == 0) return {Lattice(), QMatrix(0, n)};
  if (gens.cols() != n) throw std::invalid_argument("generator length mismatch");
  Integer d = lcm_of_denominators(gens);
  ZMatrix scaled = to_integer(gens.scaled(Rational(d)));
  ZMatrix hnf = hermite_form(scaled);
  QMatrix basis = to_rational(hnf).scaled(Rational(1) / Rational(d));
  QMatrix gram = basis * ambient.gram() * basis.transpose();
  ZMatrix t = lll_transform(gram);
  QMatrix tq = to_rational(t);
  return {Lattice(tq * gram * tq.transpose()), tq * basis};
}

EvenSublattice even_sublattice(const Lattice& l) {
  if (!l.is_integral()) throw DomainError("even_sublattice requires an integral lattice");
  if (l.is_even()) throw DomainError("even_sublattice requires an odd lattice");
  const std::size_t n = l.rank();
  std::size_t p = 0;
  while (l.gram()(p, p).get_num() % 2 == 0) ++p;
  QMatrix gens(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == p) {
      gens(i, i) = 2;
    } else {
      gens(i, i) = 1;
      if (l.gram()(i, i).get_num() % 2 != 0) gens(i, p) = 1;
    }
  }
  QVector h(n, Rational(0));
  h[p] = 1;
  return {span_of(l, gens), h};
}

Embedded glue_extension(const Lattice& l, const std::vector<LatticeVector>& glue, bool require_even) {
  const std::size_t n = l.rank();
  for (const auto& g : glue) {
    if (g.size() != n) throw std::invalid_argument("glue vector length mismatch");
    for (const auto& c : mat_vec(l.gram(), g))
      if (!is_integer(c)) throw DomainError("glue vector is not in the dual lattice");
  }
  for (std::size_t i = 0; i < glue.size(); ++i)
    for (std::size_t j = i; j < glue.size(); ++j) {
      Rational ip = l.inner(glue[i], glue[j]);
      if (!is_integer(ip)) throw DomainError("glue vectors have non-integral inner product");
      if (i == j && require_even && ip.get_num() % 2 != 0)
        throw DomainError("glue vector of odd norm in an even extension");
    }
  if (require_even && !l.is_even()) throw DomainError("even extension of a non-even lattice");
  QMatrix gens = QMatrix::identity(n);
  for (const auto& g : glue) gens.append_row(g);
  return span_of(l, gens);
}

Embedded orthogonal_complement(const Lattice& l, const QMatrix& vs) {
  const std::size_t n = l.rank();
  if (vs.rows() == 0) return {l, QMatrix::identity(n)};
  QMatrix m = l.gram() * vs.transpose();  // n x k; want y with y * m = 0
  Integer d = lcm_of_denominators(m);
  ZMatrix k = integer_kernel(to_integer(m.scaled(Rational(d))));
  if (k.rows() == 0) return {Lattice(), QMatrix(0, n)};
  return span_of(l, to_rational(k));
}

// ---- enumeration ------------------------------------------------------------

namespace {

bool canonical_less(const std::pair<Rational, QVector>& a, const std::pair<Rational, QVector>& b) {
  if (a.first != b.first) return a.first < b.first;
  return a.second < b.second;
}

void make_sign_canonical(QVector& v) {
  for (const auto& c : v) {
    if (c == 0) continue;
    if (c < 0)
      for (auto& x : v) x = -x;
    return;
  }
}

}  // namespace

std::vector<LatticeVector> short_vectors(const Lattice& l, const Rational& max_norm) {
  std::vector<std::pair<Rational, QVector>> found;
  if (l.rank() == 0) return {};
  Enumerator e(l.gram());
  auto c = e.prepare({});
  e.run(c, e.scaled_bound(max_norm, c), true, [&](const std::int64_t* z, std::int64_t nrm) {
    if (nrm == 0) return;
    QVector v = e.to_original(z, c);
    make_sign_canonical(v);
    found.emplace_back(e.norm_value(nrm, c), std::move(v));
  });
  std::sort(found.begin(), found.end(), canonical_less);
  std::vector<LatticeVector> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

std::vector<LatticeVector> coset_short_vectors(const Lattice& l, const LatticeVector& rep,
                                               const Rational& max_norm) {
  std::vector<std::pair<Rational, QVector>> found;
  if (l.rank() == 0) {
    if (max_norm >= 0) return {QVector{}};
    return {};
  }
  Enumerator e(l.gram());
  auto c = e.prepare(rep);
  e.run(c, e.scaled_bound(max_norm, c), false, [&](const std::int64_t* z, std::int64_t nrm) {
    found.emplace_back(e.norm_value(nrm, c), e.to_original(z, c));
  });
  std::sort(found.begin(), found.end(), canonical_less);
  std::vector<LatticeVector> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

std::vector<std::pair<Rational, std::uint64_t>> norm_counts(const Lattice& l, const Rational& max_norm,
                                                            const LatticeVector& rep) {
  std::map<std::int64_t, std::uint64_t> hist;
  Enumerator e(l.gram());
  auto c = e.prepare(rep);
  if (l.rank() == 0) {
    if (max_norm >= 0) return {{Rational(0), 1}};
    return {};
  }
  const bool half = c.symmetric;
  e.run(c, e.scaled_bound(max_norm, c), half, [&](const std::int64_t*, std::int64_t nrm) {
    hist[nrm] += (half && nrm != 0) ? 2 : 1;
  });
  std::vector<std::pair<Rational, std::uint64_t>> out;
  for (auto [k, v] : hist) out.emplace_back(e.norm_value(k, c), v);
  return out;
}

Rational minimum_norm(const Lattice& l) {
  if (l.rank() == 0) throw DomainError("minimum of the zero lattice");
  Lattice red = lll_reduce(l).lattice;
  Rational bound = red.gram()(0, 0);
  for (std::size_t i = 1; i < red.rank(); ++i) bound = std::min(bound, red.gram()(i, i));
  auto counts = norm_counts(l, bound);
  for (auto& [nrm, cnt] : counts)
    if (nrm != 0) return nrm;
  return bound;
}

// ---- structure --------------------------------------------------------------

namespace {

std::vector<QVector> vectors_of_norm(const Lattice& l, const Rational& nrm) {
  std::vector<QVector> out;
  for (auto& v : short_vectors(l, nrm))
    if (l.norm(v) == nrm) out.push_back(std::move(v));
  return out;
}

}  // namespace

RootSystemDesc root_system(const Lattice& l) {
  RootSystemDesc desc;
  if (l.rank() == 0) return desc;
  if (!l.is_integral()) throw DomainError("root_system requires an integral lattice");
  std::vector<QVector> roots = vectors_of_norm(l, Rational(2));
  const std::size_t m = roots.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<QVector> gr(m);
  for (std::size_t i = 0; i < m; ++i) gr[i] = mat_vec(l.gram(), roots[i]);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (dot(roots[j], gr[i]) != 0) parent[find(j)] = find(i);
  std::map<std::size_t, std::vector<std::size_t>> comps;
  for (std::size_t i = 0; i < m; ++i) comps[find(i)].push_back(i);
  for (auto& [root, members] : comps) {
    QMatrix span(0, l.rank());
    for (auto i : members) span.append_row(roots[i]);
    const int r = static_cast<int>(rank_of(span));
    const std::size_t count = 2 * members.size();
    RootComponent c{'?', r};
    if (count == static_cast<std::size_t>(r) * (r + 1)) c.series = 'A';
    else if (r >= 4 && count == 2 * static_cast<std::size_t>(r) * (r - 1)) c.series = 'D';
    else if ((r == 6 && count == 72) || (r == 7 && count == 126) || (r == 8 && count == 240))
      c.series = 'E';
    else
      throw DomainError("root configuration of rank " + std::to_string(r) + " with " +
                        std::to_string(count) + " roots is not of type A, D or E");
    desc.components.push_back(c);
    desc.root_count += count;
  }
  std::sort(desc.components.begin(), desc.components.end());
  return desc;
}

UnitSplit split_unit_vectors(const Lattice& lat) {
  if (!lat.is_integral()) throw DomainError("split_unit_vectors requires an integral lattice");
  UnitSplit out;
  if (lat.rank() == 0) {
    out.stump = {Lattice(), QMatrix(0, 0)};
    return out;
  }
  std::vector<QVector> units = vectors_of_norm(lat, Rational(1));
  out.l = units.size();
  QMatrix vs(0, lat.rank());
  for (auto& u : units) vs.append_row(u);
  out.stump = orthogonal_complement(lat, vs);
  return out;
}

Isometry reflection(const Lattice& l, const LatticeVector& root) {
  Rational nrm = l.norm(root);
  if (nrm == 0) throw DomainError("reflection in a zero vector");
  QVector gr = mat_vec(l.gram(), root);
  const std::size_t n = l.rank();
  QMatrix u = QMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) u(i, j) -= 2 * root[i] * gr[j] / nrm;
  return {u};
}

GeneratorSet automorphism_generators(const Lattice& l, const GeneratorSet& extra) {
  GeneratorSet gens;
  for (const auto& g : extra)
    if (!g.verify(l, l)) throw DomainError("supplied generator is not an isometry of the lattice");
  if (l.rank() > 0 && l.is_integral())
    for (const auto& r : vectors_of_norm(l, Rational(2))) gens.push_back(reflection(l, r));
  for (const auto& g : extra) gens.push_back(g);
  GeneratorSet out;
  for (auto& g : gens)
    if (std::none_of(out.begin(), out.end(), [&](const Isometry& o) { return o.matrix == g.matrix; }))
      out.push_back(std::move(g));
  return out;
}

Embedded fixed_sublattice_vector(const Lattice& l, const LatticeVector& h) {
  const std::size_t n = l.rank();
  QVector w = mat_vec(l.gram(), h);
  Integer d = lcm_of_denominators(w);
  if (d == 1) return {l, QMatrix::identity(n)};
  ZMatrix m(n + 1, 1);
  for (std::size_t i = 0; i < n; ++i) m(i, 0) = Rational(w[i] * d).get_num();
  m(n, 0) = d;
  ZMatrix k = integer_kernel(m);
  QMatrix gens(k.rows(), n);
  for (std::size_t i = 0; i < k.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) gens(i, j) = k(i, j);
  return span_of(l, gens);
}

FixedCoinvariant fixed_and_coinvariant(const Lattice& l, const Isometry& nu) {
  if (!nu.verify(l, l)) throw DomainError("fixed_and_coinvariant: not an isometry");
  const std::size_t n = l.rank();
  // Row vectors y with (U - I) y^T = 0, i.e. y (U - I)^T = 0.
  QMatrix m = (nu.matrix - QMatrix::identity(n)).transpose();
  Integer d = lcm_of_denominators(m);
  ZMatrix k = n ? integer_kernel(to_integer(m.scaled(Rational(d)))) : ZMatrix(0, 0);
  Embedded fixed = k.rows() ? span_of(l, to_rational(k)) : Embedded{Lattice(), QMatrix(0, n)};
  Embedded coinv = orthogonal_complement(l, fixed.basis);
  if (fixed.basis.rows() == 0) coinv = {l, QMatrix::identity(n)};
  return {fixed, coinv};
}

// ---- naming -----------------------------------------------------------------

Fingerprint fingerprint(const Lattice& l) {
  Fingerprint f;
  f.rank = l.rank();
  f.det = l.det();
  f.counts = norm_counts(l, Rational(4));
  if (l.is_integral()) f.roots = root_system(l);
  return f;
}

namespace {

/// Index of the full-rank sublattice S in L.
Integer glue_index(const QMatrix& sub_basis) {
  if (sub_basis.rows() == 0) return 1;
  if (lcm_of_denominators(sub_basis) != 1) throw DomainError("sublattice basis is not integral");
  Integer d = abs(Rational(determinant(sub_basis)).get_num());
  return d;
}

std::string even_name(const Lattice& l) {
  const std::size_t n = l.rank();
  if (n == 0) return "0";
  RootSystemDesc rs = root_system(l);
  if (rs.components.empty()) {
    if (n == 24 && l.det() == 1 && l.is_even()) return "Leech";
    std::ostringstream os;
    os << "[rank " << n << ", det " << l.det() << ", min " << minimum_norm(l) << "]";
    return os.str();
  }
  std::vector<QVector> roots;
  for (auto& v : short_vectors(l, Rational(2)))
    if (l.norm(v) == 2) roots.push_back(v);
  QMatrix rs_mat(0, n);
  for (auto& r : roots) rs_mat.append_row(r);
  Embedded rootlat = span_of(l, rs_mat);
  Embedded comp = orthogonal_complement(l, rootlat.basis);
  // Component labels as (series, rank, scale) so that A1(m) sorts with the A's.
  struct Label {
    char series;
    int rank;
    Integer scale;
    bool operator<(const Label& o) const {
      if (series != o.series) return series < o.series;
      if (rank != o.rank) return rank < o.rank;
      return scale > o.scale;
    }
    bool operator==(const Label& o) const { return series == o.series && rank == o.rank && scale == o.scale; }
  };
  std::vector<Label> labels;
  for (auto& c : rs.components) labels.push_back({c.series, c.rank, 1});
  std::string extra;
  if (comp.lattice.rank() == 1) {
    Rational g = comp.lattice.gram()(0, 0);
    labels.push_back({'A', 1, g.get_num() / 2});
  } else if (comp.lattice.rank() > 1) {
    extra = "[rank " + std::to_string(comp.lattice.rank()) + "]";
  }
  std::sort(labels.begin(), labels.end());
  std::ostringstream body;
  std::size_t parts = 0;
  for (std::size_t i = 0; i < labels.size();) {
    std::size_t j = i;
    while (j < labels.size() && labels[j] == labels[i]) ++j;
    body << labels[i].series << labels[i].rank;
    if (labels[i].scale != 1) body << '(' << labels[i].scale << ')';
    if (j - i > 1) body << '^' << (j - i);
    parts += (j - i > 1) ? 2 : 1;
    i = j;
  }
  body << extra;
  if (!extra.empty()) ++parts;
  QMatrix sub = rootlat.basis;
  for (std::size_t i = 0; i < comp.basis.rows(); ++i) sub.append_row(comp.basis.row(i));
  Integer index = glue_index(sub);
  std::string s = body.str();
  if (index == 1) return s;
  if (parts > 1) s = "(" + s + ")";
  // One mark per index-2 step; other glue is written out.
  std::size_t plus = 0;
  for (Integer k = index; k % 2 == 0; k /= 2) ++plus;
  if (index == (Integer(1) << plus) && plus <= 3) return s + std::string(plus, '+');
  return s + "[glue " + index.get_str() + "]";
}

}  // namespace

std::string describe_lattice(const Lattice& l) {
  if (!l.is_integral()) {
    std::ostringstream os;
    os << "[rank " << l.rank() << ", det " << l.det() << "]";
    return os.str();
  }
  if (l.is_even()) return even_name(l);
  UnitSplit s = split_unit_vectors(l);
  std::string z = s.l == 1 ? "Z" : "Z^" + std::to_string(s.l);
  const Lattice& st = s.stump.lattice;
  if (st.rank() == 0) return z;
  std::string stump_name = even_name(st);
  return s.l == 0 ? stump_name : stump_name + " ⊕ " + z;
}

}  // namespace svoa
