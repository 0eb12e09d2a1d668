#include "svoa/neighbour.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include <json.hpp>

namespace svoa {

namespace {

using U64 = std::uint64_t;

constexpr std::size_t kMaxOrbitRank = 24;

std::int64_t as_int(const Rational& r) {
  if (!is_integer(r) || !r.get_num().fits_slong_p()) throw DomainError("expected a small integer");
  return r.get_num().get_si();
}

QVector coords_in(const Embedded& e, const QVector& ambient) { return vec_mat(ambient, inverse(e.basis)); }

Embedded compose(const Embedded& inner, const Embedded& outer) {
  return {inner.lattice, inner.basis * outer.basis};
}

Lattice zero_lattice() { return Lattice(QMatrix(0, 0)); }

/// Finds an isometric node, if any.
std::optional<std::size_t> find_node(const std::vector<GraphNode>& nodes, const Lattice& l,
                                     const Fingerprint& fp) {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].fp == fp && is_isometric(l, nodes[i].lattice, fp, nodes[i].fp)) return i;
  return std::nullopt;
}

}  // namespace

// ---- classes and orbits -------------------------------------------------------

LatticeVector Norm4Class::lift() const {
  LatticeVector v(rank, Rational(0));
  for (std::size_t i = 0; i < rank; ++i)
    if (bits >> (rank - 1 - i) & 1) v[i] = 1;
  return v;
}

std::string Norm4Class::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < rank; ++i) s += (bits >> (rank - 1 - i) & 1) ? '1' : '0';
  return s;
}

Norm4Class Norm4Class::of(const LatticeVector& v) {
  Norm4Class c;
  c.rank = v.size();
  if (c.rank > 64) throw DomainError("class bitvector longer than 64");
  for (std::size_t i = 0; i < c.rank; ++i)
    if (as_int(v[i]) & 1) c.bits |= U64(1) << (c.rank - 1 - i);
  return c;
}

std::uint32_t OrbitData::index_of(const LatticeVector& v) const {
  if (v.size() != rank) throw std::invalid_argument("vector length mismatch");
  return orbit_of[Norm4Class::of(v).bits];
}

OrbitData orbit_classes(const Lattice& m, const GeneratorSet& gens) {
  const std::size_t n = m.rank();
  if (n > kMaxOrbitRank) throw DomainError("orbit enumeration limited to rank 24");
  if (!m.is_even() || m.det() != 1) throw DomainError("orbit_classes requires an even unimodular lattice");
  const U64 total = U64(1) << n;
  auto bit = [n](std::size_t i) { return U64(1) << (n - 1 - i); };

  // Norm mod 4 of the {0,1}-lift, built up one coordinate at a time.
  std::vector<std::int64_t> g(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i * n + j] = as_int(m.gram()(i, j));
  std::vector<std::uint8_t> norm4(total, 0);
  for (U64 x = 1; x < total; ++x) {
    U64 low = x & (~x + 1);
    std::size_t i = 0;
    while (bit(i) != low) ++i;
    U64 y = x ^ low;
    std::int64_t ip = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (y & bit(j)) ip += g[i * n + j];
    norm4[x] = static_cast<std::uint8_t>(((norm4[y] + 2 * ip + g[i * n + i]) % 4 + 4) % 4);
  }

  // Generator images of basis vectors, mod 2.
  std::vector<std::vector<U64>> cols;
  for (const auto& gen : gens) {
    if (gen.matrix.rows() != n || gen.matrix.cols() != n) throw std::invalid_argument("generator size mismatch");
    std::vector<U64> c(n, 0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        if (as_int(gen.matrix(i, j)) & 1) c[j] |= bit(i);
    if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(std::move(c));
  }
  auto apply = [&](const std::vector<U64>& c, U64 x) {
    U64 out = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (x & bit(j)) out ^= c[j];
    return out;
  };

  OrbitData out;
  out.rank = n;
  out.orbit_of.assign(total, OrbitData::npos);
  std::vector<U64> queue;
  for (U64 x = 1; x < total; ++x) {
    if (norm4[x] != 0 || out.orbit_of[x] != OrbitData::npos) continue;
    const auto id = static_cast<std::uint32_t>(out.orbits.size());
    queue.assign(1, x);
    out.orbit_of[x] = id;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (const auto& c : cols) {
        U64 y = apply(c, queue[head]);
        if (out.orbit_of[y] == OrbitData::npos) {
          out.orbit_of[y] = id;
          queue.push_back(y);
        }
      }
    out.orbits.push_back({Norm4Class{x, n}, queue.size()});
  }
  return out;
}

// ---- neighbours -----------------------------------------------------------------

NeighbourResult two_neighbour(const Lattice& m, const LatticeVector& v) {
  const std::size_t n = m.rank();
  if (v.size() != n) throw std::invalid_argument("vector length mismatch");
  if (!m.is_even() || m.det() != 1) throw DomainError("two_neighbour requires an even unimodular lattice");
  for (const auto& c : v)
    if (!is_integer(c)) throw DomainError("two_neighbour requires a lattice vector");
  const Rational nv = m.norm(v);
  if (!is_integer(nv / 4)) throw DomainError("two_neighbour requires norm divisible by 4");
  QVector w = mat_vec(m.gram(), v);
  std::size_t p = n;
  for (std::size_t i = 0; i < n && p == n; ++i)
    if (w[i].get_num() % 2 != 0) p = i;
  if (p == n) throw DomainError("two_neighbour requires v outside 2M");

  QMatrix kgens(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == p) {
      kgens(i, i) = 2;
    } else {
      kgens(i, i) = 1;
      if (w[i].get_num() % 2 != 0) kgens(i, p) = 1;
    }
  }
  NeighbourResult r;
  r.v = v;
  r.k = span_of(m, kgens);
  r.m1 = {m, QMatrix::identity(n)};

  QVector h = v;
  for (auto& c : h) c /= 2;
  QVector hp = h;
  hp[p] += 1;
  const bool h_even = Rational(nv / 4).get_num() % 2 == 0;
  const QVector& even_glue = h_even ? h : hp;
  const QVector& odd_glue = h_even ? hp : h;
  r.m2 = compose(glue_extension(r.k.lattice, {coords_in(r.k, even_glue)}, true), r.k);
  r.odd = compose(glue_extension(r.k.lattice, {coords_in(r.k, odd_glue)}), r.k);

  if (r.m2.lattice.det() != 1 || !r.m2.lattice.is_even() || r.odd.lattice.det() != 1 || r.odd.lattice.is_even())
    throw std::logic_error("neighbour extensions have the wrong type");
  if (!is_isomorphic_df(discriminant_form(r.k.lattice).form, form_from_symbol("2_II^+2")))
    throw std::logic_error("neighbour intersection has the wrong discriminant form");

  QVector back(n, Rational(0));
  back[p] = 2;
  r.reverse = coords_in(r.m2, back);
  return r;
}

int edge_kind(const Lattice& m, const OrbitData& orbits, const NeighbourResult& res) {
  auto iso = is_isometric(res.m2.lattice, m);
  if (!iso) return 1;
  const std::uint32_t there = orbits.index_of(iso->apply(res.reverse));
  return there == orbits.index_of(res.v) ? 3 : 2;
}

// ---- graphs ---------------------------------------------------------------------

std::size_t NeighbourGraph::loops() const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [](const NeighbourEdge& e) { return e.from == e.to; }));
}

std::string NeighbourGraph::to_dot() const {
  std::ostringstream os;
  os << "graph neighbours {\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) os << "  n" << i << " [label=\"" << nodes[i].name << "\"];\n";
  for (const auto& e : edges) {
    os << "  n" << e.from << " -- n" << e.to << " [label=\"" << e.k_name << "\"";
    if (e.has_units) os << ", style=dotted";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string NeighbourGraph::to_json() const {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (std::size_t i = 0; i < nodes.size(); ++i)
    j["nodes"].push_back({{"id", i}, {"name", nodes[i].name}, {"rank", nodes[i].lattice.rank()}});
  j["edges"] = nlohmann::json::array();
  for (const auto& e : edges)
    j["edges"].push_back({{"from", e.from},
                          {"to", e.to},
                          {"k", e.k_name},
                          {"odd", e.odd_name},
                          {"kind", e.kind},
                          {"orbit_size", e.orbit_size},
                          {"has_units", e.has_units}});
  return j.dump(2);
}

NeighbourGraph build_graph(const std::vector<std::pair<Lattice, GeneratorSet>>& seeds) {
  NeighbourGraph g;
  std::size_t rank = seeds.empty() ? 0 : seeds.front().first.rank();
  for (const auto& [l, gens] : seeds) {
    if (l.rank() != rank) throw DomainError("seeds must have equal rank");
    if (!l.is_even() || l.det() != 1) throw DomainError("seeds must be even unimodular");
    Fingerprint fp = fingerprint(l);
    if (find_node(g.nodes, l, fp)) continue;
    g.nodes.push_back({l, gens, fp, describe_lattice(l)});
  }
  std::vector<Fingerprint> kfps;
  for (std::size_t cur = 0; cur < g.nodes.size(); ++cur) {
    const Lattice m = g.nodes[cur].lattice;
    OrbitData od = orbit_classes(m, g.nodes[cur].gens);
    for (const auto& orb : od.orbits) {
      NeighbourResult r = two_neighbour(m, orb.rep.lift());
      Fingerprint fp2 = fingerprint(r.m2.lattice);
      auto target = find_node(g.nodes, r.m2.lattice, fp2);
      if (!target) {
        g.nodes.push_back({r.m2.lattice, automorphism_generators(r.m2.lattice), fp2, describe_lattice(r.m2.lattice)});
        target = g.nodes.size() - 1;
      }
      Fingerprint kfp = fingerprint(r.k.lattice);
      bool seen = false;
      for (std::size_t e = 0; e < g.edges.size() && !seen; ++e) {
        const auto& ed = g.edges[e];
        bool same_pair = (ed.from == cur && ed.to == *target) || (ed.from == *target && ed.to == cur);
        seen = same_pair && kfps[e] == kfp && is_isometric(r.k.lattice, ed.k, kfp, kfps[e]);
      }
      if (seen) continue;
      NeighbourEdge e;
      e.from = cur;
      e.to = *target;
      e.k = r.k.lattice;
      e.k_name = describe_lattice(e.k);
      e.odd = r.odd.lattice;
      e.odd_name = describe_lattice(e.odd);
      e.kind = *target == cur ? edge_kind(m, od, r) : 1;
      e.orbit_size = orb.size;
      e.v = r.v;
      e.has_units = !short_vectors(e.odd, Rational(1)).empty();
      g.edges.push_back(std::move(e));
      kfps.push_back(kfp);
    }
  }
  return g;
}

std::vector<std::pair<Lattice, GeneratorSet>> standard_seeds(std::size_t rank) {
  switch (rank) {
    case 0:
      return {{zero_lattice(), {}}};
    case 8: {
      Lattice e8 = make_lattice('E', 8);
      return {{e8, automorphism_generators(e8)}};
    }
    case 16: {
      Lattice e8 = make_lattice('E', 8);
      Lattice e8e8 = direct_sum(e8, e8);
      QMatrix swap(16, 16);
      for (std::size_t i = 0; i < 8; ++i) {
        swap(i + 8, i) = 1;
        swap(i, i + 8) = 1;
      }
      return {{e8e8, automorphism_generators(e8e8, {Isometry{swap}})}};
    }
    default:
      throw DomainError("standard seeds exist for ranks 0, 8 and 16");
  }
}

// ---- odd unimodular lattices ----------------------------------------------------

OddClassification classify_odd_unimodular(std::size_t max_rank) {
  if (max_rank > 16) throw DomainError("classify_odd_unimodular supports ranks up to 16");
  OddClassification out;
  std::vector<Fingerprint> odd_fps, even_fps;
  auto add_unique = [](std::vector<Lattice>& list, std::vector<Fingerprint>& fps, const Lattice& l) {
    Fingerprint fp = fingerprint(l);
    for (std::size_t i = 0; i < list.size(); ++i)
      if (fps[i] == fp && is_isometric(l, list[i], fp, fps[i])) return;
    list.push_back(l);
    fps.push_back(fp);
  };
  for (std::size_t rank = 0; rank <= max_rank + 7; rank += 8) {
    if (rank > 16) break;
    NeighbourGraph g = build_graph(standard_seeds(rank));
    for (const auto& node : g.nodes) add_unique(out.even_stumps, even_fps, node.lattice);
    for (const auto& e : g.edges) {
      UnitSplit s = split_unit_vectors(e.odd);
      const Lattice& st = s.stump.lattice;
      if (st.rank() > 0 && !st.is_even()) add_unique(out.odd_stumps, odd_fps, st);
    }
  }
  auto order = [](std::vector<Lattice>& list) {
    std::stable_sort(list.begin(), list.end(), [](const Lattice& a, const Lattice& b) { return a.rank() < b.rank(); });
  };
  order(out.odd_stumps);
  order(out.even_stumps);
  auto with_units = [](const Lattice& st, std::size_t l) {
    std::string z = l == 1 ? "Z" : "Z^" + std::to_string(l);
    if (st.rank() == 0) return z;
    std::string name = describe_lattice(st);
    return l == 0 ? name : name + " ⊕ " + z;
  };
  for (std::size_t d = 0; d <= max_rank; ++d) {
    OddClassRow row;
    row.rank = d;
    for (const auto& s : out.odd_stumps)
      if (s.rank() <= d) {
        ++row.odd;
        row.odd_names.push_back(with_units(s, d - s.rank()));
        if (s.rank() == d) ++row.new_odd_stumps;
      }
    for (const auto& s : out.even_stumps) {
      if (s.rank() < d) {
        ++row.odd;
        row.odd_names.push_back(with_units(s, d - s.rank()));
      } else if (s.rank() == d) {
        ++row.even;
        row.even_names.push_back(with_units(s, 0));
      }
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

// ---- inner automorphisms ---------------------------------------------------------

std::vector<InnerOrbit> classify_inner_lattice_node(const Lattice& m, const GeneratorSet& gens) {
  OrbitData od = orbit_classes(m, gens);
  std::vector<InnerOrbit> out;
  for (const auto& orb : od.orbits) {
    InnerOrbit io;
    io.orbit = orb;
    io.h = orb.rep.lift();
    for (auto& c : io.h) c /= 2;
    io.fixed = fixed_sublattice_vector(m, io.h);
    io.glue_type = "I";
    // h + M meets the even vectors in h + L^h or in h + m0 + L^h.
    QVector glue = io.h;
    if (!is_integer(m.norm(glue) / 2)) {
      const std::size_t n = m.rank();
      QVector w = mat_vec(m.gram(), io.h);
      for (std::size_t i = 0; i < n; ++i)
        if (!is_integer(w[i])) {
          glue[i] += 1;
          break;
        }
    }
    io.neighbour = compose(glue_extension(io.fixed.lattice, {coords_in(io.fixed, glue)}, true), io.fixed);
    out.push_back(std::move(io));
  }
  return out;
}

}  // namespace svoa
