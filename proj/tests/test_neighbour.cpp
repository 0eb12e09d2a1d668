#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "support.hpp"
#include "svoa/neighbour.hpp"

using namespace svoa;
using namespace testsupport;

namespace {

/// E8 in the even coordinate system: D8 plus the all-halves vector.
struct E8Model {
  QMatrix basis;  // rows in R^8
  Lattice lattice;
};

E8Model e8_model() {
  QMatrix gens(0, 8);
  for (std::size_t i = 0; i + 1 < 8; ++i) {
    QVector r(8, Rational(0));
    r[i] = 1;
    r[i + 1] = -1;
    gens.append_row(r);
  }
  QVector r(8, Rational(0));
  r[6] = 1;
  r[7] = 1;
  gens.append_row(r);
  gens.append_row(QVector(8, Rational(1, 2)));
  Lattice z8 = make_lattice('Z', 8);
  Embedded e = span_of(z8, gens);
  return {e.basis, e.lattice};
}

/// Nonzero classes of norm 0 mod 4, counted directly from exact norms.
std::size_t direct_class_count(const Lattice& m) {
  const std::size_t n = m.rank();
  std::size_t count = 0;
  for (std::uint64_t x = 1; x < (std::uint64_t(1) << n); ++x) {
    QVector v(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) v[i] = (x >> i) & 1;
    count += is_integer(m.norm(v) / 4);
  }
  return count;
}

const NeighbourGraph& graph16() {
  static NeighbourGraph g = build_graph(standard_seeds(16));
  return g;
}

Lattice d16_even_plus() { return d16_plus(); }

}  // namespace

TEST_CASE("orbits on M/2M") {
  Lattice e8 = make_lattice('E', 8);
  auto od = orbit_classes(e8, automorphism_generators(e8));
  REQUIRE(od.orbits.size() == 1);
  CHECK(od.orbits[0].size == 135);
  CHECK(direct_class_count(e8) == 135);
  // Representatives are least in their orbit and classes map to their orbit.
  for (std::uint64_t x = 1; x < 256; ++x)
    if (od.orbit_of[x] != OrbitData::npos) CHECK(od.orbits[od.orbit_of[x]].rep.bits <= x);
  CHECK(od.index_of(od.orbits[0].rep.lift()) == 0);

  auto e8e8 = standard_seeds(16).front();
  auto od2 = orbit_classes(e8e8.first, e8e8.second);
  CHECK(od2.orbits.size() == 3);
  std::uint64_t total = 0;
  for (auto& o : od2.orbits) total += o.size;
  CHECK(total == direct_class_count(e8e8.first));

  Lattice d16p = d16_even_plus();
  auto od3 = orbit_classes(d16p, automorphism_generators(d16p));
  CHECK(od3.orbits.size() == 4);
  total = 0;
  for (auto& o : od3.orbits) total += o.size;
  CHECK(total == direct_class_count(d16p));

  // Without the swap the two E8 factors are told apart.
  auto weyl_only = orbit_classes(e8e8.first, automorphism_generators(e8e8.first));
  CHECK(weyl_only.orbits.size() == 4);

  // Generator order does not change the result.
  GeneratorSet shuffled = e8e8.second;
  std::mt19937 rng(7);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  auto od4 = orbit_classes(e8e8.first, shuffled);
  REQUIRE(od4.orbits.size() == od2.orbits.size());
  for (std::size_t i = 0; i < od2.orbits.size(); ++i) {
    CHECK(od4.orbits[i].rep.bits == od2.orbits[i].rep.bits);
    CHECK(od4.orbits[i].size == od2.orbits[i].size);
  }
  CHECK_THROWS_AS(orbit_classes(make_lattice('Z', 4), {}), DomainError);
}

TEST_CASE("two-neighbour construction") {
  E8Model e8 = e8_model();
  QVector v_amb{1, 1, 1, 1, 0, 0, 0, 0};
  QVector v = vec_mat(v_amb, inverse(e8.basis));
  auto r = two_neighbour(e8.lattice, v);
  CHECK(r.k.lattice.det() == 4);
  CHECK(root_system(r.k.lattice).name() == "D8");
  CHECK(is_isometric(r.m2.lattice, e8.lattice));
  CHECK(is_isometric(r.odd.lattice, make_lattice('Z', 8)));
  CHECK(r.m1.lattice.gram() == e8.lattice.gram());

  CHECK_THROWS_AS(two_neighbour(e8.lattice, vec_mat(QVector{1, -1, 0, 0, 0, 0, 0, 0}, inverse(e8.basis))),
                  DomainError);
  QVector twice = v;
  for (auto& c : twice) c *= 2;
  CHECK_THROWS_AS(two_neighbour(e8.lattice, twice), DomainError);

  // Random vectors in a rank-16 lattice: index and determinant bookkeeping.
  Lattice d16p = d16_even_plus();
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-2, 2);
  int tried = 0;
  while (tried < 12) {
    QVector x(16);
    for (auto& c : x) c = coef(rng);
    if (!is_integer(d16p.norm(x) / 4)) continue;
    bool in_2m = std::all_of(x.begin(), x.end(), [](const Rational& c) { return c.get_num() % 2 == 0; });
    if (in_2m) continue;
    ++tried;
    auto nb = two_neighbour(d16p, x);
    CHECK(nb.k.lattice.det() == 4);
    CHECK(nb.odd.lattice.det() == 1);
    CHECK_FALSE(nb.odd.lattice.is_even());
    CHECK(nb.m2.lattice.is_even());
    // K is exactly the vectors of M with even product against v.
    for (std::size_t i = 0; i < 16; ++i) {
      Rational ip = d16p.inner(nb.k.basis.row(i), x);
      CHECK(ip.get_num() % 2 == 0);
    }
    // Reverse vector recovers M as the neighbour of M2.
    auto back = two_neighbour(nb.m2.lattice, nb.reverse);
    Embedded m_again{back.m2.lattice, back.m2.basis * nb.m2.basis};
    CHECK(to_integer(m_again.basis).rows() == 16);
    CHECK(std::abs(determinant(m_again.basis).get_d()) == 1.0);
  }
}

TEST_CASE("graphs of rank 0 and 8") {
  auto g0 = build_graph(standard_seeds(0));
  CHECK(g0.nodes.size() == 1);
  CHECK(g0.edges.empty());

  auto g8 = build_graph(standard_seeds(8));
  REQUIRE(g8.nodes.size() == 1);
  REQUIRE(g8.edges.size() == 1);
  const auto& e = g8.edges[0];
  CHECK(e.from == 0);
  CHECK(e.to == 0);
  CHECK(e.kind == 3);
  CHECK(e.k_name == "D8");
  CHECK(e.odd_name == "Z^8");
  CHECK(e.has_units);
  CHECK(g8.nodes[0].name == "E8");
}

TEST_CASE("graph of rank 16") {
  const auto& g = graph16();
  REQUIRE(g.nodes.size() == 2);
  CHECK(g.nodes[0].name == "E8^2");
  CHECK(g.nodes[1].name == "D16+");
  CHECK(g.edges.size() == 6);
  CHECK(g.loops() == 5);
  std::multiset<std::string> ks, odds;
  for (auto& e : g.edges) {
    ks.insert(e.k_name);
    odds.insert(e.odd_name);
    CHECK(e.kind == (e.from == e.to ? 3 : 1));
    if (e.has_units) CHECK(e.from == e.to);
    CHECK(e.k.det() == 4);
    CHECK(is_isomorphic_df(discriminant_form(e.k).form, form_from_symbol("2_II^+2")));
    CHECK(e.odd.det() == 1);
    CHECK_FALSE(e.odd.is_even());
  }
  CHECK(ks == std::multiset<std::string>{"D8E8", "(D8^2)+", "(A1^2E7^2)+", "(A1(2)A15)++", "D16", "(D4D12)+"});
  std::size_t hidden = std::count_if(g.edges.begin(), g.edges.end(), [](auto& e) { return e.has_units; });
  CHECK(hidden == 5);
  auto connecting = std::find_if(g.edges.begin(), g.edges.end(), [](auto& e) { return e.from != e.to; });
  REQUIRE(connecting != g.edges.end());
  CHECK(connecting->k_name == "(D8^2)+");
  CHECK_FALSE(connecting->has_units);
  CHECK(g.to_dot().find("D16+") != std::string::npos);
  CHECK(g.to_json().find("\"kind\": 3") != std::string::npos);
}

TEST_CASE("odd unimodular lattices up to rank 16") {
  auto c = classify_odd_unimodular(16);
  REQUIRE(c.rows.size() == 17);
  const std::size_t odd[17] = {0, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 3, 3, 4, 5, 6};
  const std::size_t even[17] = {1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 2};
  for (std::size_t d = 0; d <= 16; ++d) {
    CHECK(c.rows[d].odd == odd[d]);
    CHECK(c.rows[d].even == even[d]);
  }
  std::set<std::string> twelve(c.rows[12].odd_names.begin(), c.rows[12].odd_names.end());
  CHECK(twelve == std::set<std::string>{"Z^12", "E8 ⊕ Z^4", "D12+"});
  CHECK(c.rows[8].odd_names == std::vector<std::string>{"Z^8"});
  std::vector<std::size_t> stump_ranks;
  for (auto& s : c.odd_stumps) stump_ranks.push_back(s.rank());
  CHECK(stump_ranks == std::vector<std::size_t>{12, 14, 15, 16});
  for (auto& s : c.odd_stumps) CHECK(short_vectors(s, Rational(1)).empty());
  CHECK(classify_odd_unimodular(5).rows.size() == 6);
  CHECK_THROWS_AS(classify_odd_unimodular(17), DomainError);
}

TEST_CASE("inner automorphism view") {
  Lattice e8 = make_lattice('E', 8);
  auto inner = classify_inner_lattice_node(e8, automorphism_generators(e8));
  REQUIRE(inner.size() == 1);
  CHECK(inner[0].glue_type == "I");
  CHECK(root_system(inner[0].fixed.lattice).name() == "D8");
  CHECK(is_isometric(inner[0].neighbour.lattice, e8));

  Lattice d16p = d16_even_plus();
  GeneratorSet gens = automorphism_generators(d16p);
  auto od = orbit_classes(d16p, gens);
  auto in16 = classify_inner_lattice_node(d16p, gens);
  REQUIRE(in16.size() == od.orbits.size());
  const auto& g = graph16();
  for (std::size_t i = 0; i < in16.size(); ++i) {
    CHECK(in16[i].glue_type == "I");
    auto nb = two_neighbour(d16p, od.orbits[i].rep.lift());
    CHECK(is_isometric(nb.k.lattice, in16[i].fixed.lattice));
    CHECK(is_isometric(nb.m2.lattice, in16[i].neighbour.lattice));
    // Each L^h labels an edge at the D16+ node.
    bool found = false;
    for (auto& e : g.edges)
      if ((e.from == 1 || e.to == 1) && is_isometric(e.k, in16[i].fixed.lattice)) found = true;
    CHECK(found);
  }
}
