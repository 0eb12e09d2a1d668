// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "glue_oracle.hpp"
#include "svoa/bundle.hpp"
#include "svoa/glue.hpp"
#include "svoa/neighbour.hpp"
#include "svoa/qchar.hpp"

using namespace svoa;

namespace {

constexpr double kResidualTol = 1e-6;
constexpr double kGraph8Seconds = 10;
constexpr double kGraph16Seconds = 300;
constexpr double kBasisSeconds = 5;
constexpr double kCharacterSeconds = 120;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      note << " [" << what << "]";
    }
  }
};

const NeighbourGraph& graph16() {
  static NeighbourGraph g = build_graph(standard_seeds(16));
  return g;
}

long roots_plus_rank(const Lattice& l) { return static_cast<long>(l.rank() + root_system(l).root_count); }

void graph8(Outcome& o) {
  auto t = Clock::now();
  auto g = build_graph(standard_seeds(8));
  double s = seconds_since(t);
  o.require(g.nodes.size() == 1, "one node");
  o.require(g.edges.size() == 1, "one edge");
  if (g.nodes.size() == 1 && g.edges.size() == 1) {
    const auto& e = g.edges[0];
    o.require(bool(is_isometric(g.nodes[0].lattice, make_lattice('E', 8))), "node is E8");
    o.require(e.from == 0 && e.to == 0, "loop");
    o.require(bool(is_isometric(e.k, make_lattice('D', 8))), "K is D8");
    o.require(bool(is_isometric(e.odd, make_lattice('Z', 8))), "odd lattice is Z^8");
  }
  o.require(s < kGraph8Seconds, "runtime");
  o.note << " " << s << " s";
}

void graph16_check(Outcome& o) {
  auto t = Clock::now();
  const auto& g = graph16();
  double s = seconds_since(t);
  o.require(g.nodes.size() == 2, "two nodes");
  o.require(g.edges.size() == 6, "six edges");
  if (g.nodes.size() == 2) {
    Lattice e8 = make_lattice('E', 8);
    o.require(bool(is_isometric(g.nodes[0].lattice, direct_sum(e8, e8))), "E8^2");
    o.require(g.nodes[1].name == "D16+" && root_system(g.nodes[1].lattice).name() == "D16", "D16+");
  }
  std::multiset<std::pair<std::string, std::string>> seen;
  for (const auto& e : g.edges) {
    std::string at = e.from == e.to ? g.nodes[e.from].name : "connecting";
    seen.insert({e.k_name, at});
    if (e.from == e.to) o.require(e.kind == 3, "loop " + e.k_name + " kind 3");
  }
  std::multiset<std::pair<std::string, std::string>> want = {
      {"(D8^2)+", "connecting"}, {"(A1^2E7^2)+", "E8^2"}, {"D8E8", "E8^2"},
      {"(A1(2)A15)++", "D16+"},  {"D16", "D16+"},         {"(D4D12)+", "D16+"}};
  o.require(seen == want, "K classes");
  o.require(s < kGraph16Seconds, "runtime");
  o.note << " " << s << " s";
}

void odd_counts(Outcome& o) {
  auto c = classify_odd_unimodular(16);
  std::ostringstream got;
  for (const auto& row : numbers_table()) {
    if (!is_integer(row.c) || row.c < 8 || row.c > 16) continue;
    std::size_t d = row.c.get_num().get_ui();
    got << c.rows[d].odd << (d < 16 ? "," : "");
    o.require(row.lattice_odd && *row.lattice_odd == static_cast<long>(c.rows[d].odd), "rank " + std::to_string(d));
    o.require(row.lattice_stump && *row.lattice_stump == static_cast<long>(c.rows[d].new_odd_stumps),
              "stump rank " + std::to_string(d));
  }
  o.note << " d=8..16: " << got.str();
}

void basis_coefficients(Outcome& o) {
  auto t = Clock::now();
  VectorForm4 f = build_basis_F(6), g = build_basis_G(6);
  double s = seconds_since(t);
  const Rational h(1, 2);
  o.require(f[0].coeff(-1) == 1 && f[0].coeff(0) == -24 && f[0].coeff(1) == 98580, "F0");
  o.require(f[1].coeff(0) == 0 && f[1].coeff(1) == 98304, "F1");
  o.require(f[2].coeff(0) == 0 && f[2].coeff(1) == 98304, "F2");
  o.require(f[3].coeff(-h) == 0 && f[3].coeff(h) == 4096, "F3");
  o.require(g[0].coeff(-1) == 0 && g[0].coeff(0) == -24 && g[0].coeff(1) == 2048, "G0");
  o.require(g[1].coeff(0) == -24 && g[1].coeff(1) == -2048, "G1");
  o.require(g[2].coeff(0) == -24 && g[2].coeff(1) == -2048, "G2");
  o.require(g[3].coeff(-h) == 1 && g[3].coeff(h) == 276, "G3");
  QSeries t2 = eta_quotient({{Rational(1), 24}, {Rational(2), -24}}, 3);
  o.require(t2.coeff(-1) == 1 && t2.coeff(0) == -24 && t2.coeff(1) == 276 && t2.coeff(2) == -2048, "t2");
  o.require(s < kBasisSeconds, "runtime");
  o.note << " " << s << " s";
}

/// j = E4^3 / Delta from divisor sums and the product for Delta.
std::vector<Integer> j_coefficients(std::size_t len) {
  std::vector<Integer> e4(len + 1, 0), delta(len + 1, 0);
  e4[0] = 1;
  for (std::size_t n = 1; n <= len; ++n) {
    Integer s3 = 0;
    for (std::size_t d = 1; d <= n; ++d)
      if (n % d == 0) s3 += Integer(static_cast<long>(d * d * d));
    e4[n] = 240 * s3;
  }
  auto mul = [&](const std::vector<Integer>& a, const std::vector<Integer>& b) {
    std::vector<Integer> c(len + 1, 0);
    for (std::size_t i = 0; i <= len; ++i)
      for (std::size_t j = 0; i + j <= len; ++j) c[i + j] += a[i] * b[j];
    return c;
  };
  // prod (1 - q^n)^24, then Delta = q * that.
  std::vector<Integer> p(len + 1, 0);
  p[0] = 1;
  for (std::size_t n = 1; n <= len; ++n)
    for (int r = 0; r < 24; ++r)
      for (std::size_t i = len; i >= n; --i) p[i] -= p[i - n];
  // 1 / p by recursion.
  std::vector<Integer> inv(len + 1, 0);
  inv[0] = 1;
  for (std::size_t n = 1; n <= len; ++n) {
    Integer s = 0;
    for (std::size_t i = 1; i <= n; ++i) s += p[i] * inv[n - i];
    inv[n] = -s;
  }
  auto e43 = mul(mul(e4, e4), e4);
  return mul(e43, inv);  // coefficient n is that of q^{n-1} in j
}

void j_identity(Outcome& o) {
  const long prec = 12;
  VectorForm4 f = build_basis_F(prec);
  QSeries lhs = f[0] + f[1] + QSeries::constant(48, prec);
  auto j = j_coefficients(prec + 1);
  for (long n = -1; n < prec; ++n) {
    Integer want = j[static_cast<std::size_t>(n + 1)];
    if (n == 0) want -= 720;
    o.require(lhs.coeff(n) == Rational(want), "q^" + std::to_string(n));
  }
  o.require(lhs.coeff(1) == 196884 && lhs.coeff(0) == 24, "196884 and 24");
  o.note << " through q^" << prec - 1;
}

void rank24_characters(Outcome& o) {
  auto t = Clock::now();
  const Rational prec(5);
  for (const auto& nl : rank24_odd_lattices()) {
    auto oc = character_from_odd_lattice(nl.lattice, prec);
    auto p = abl_from_dims(roots_plus_rank(oc.even_part), roots_plus_rank(oc.neighbours[0]),
                           roots_plus_rank(oc.neighbours[1]));
    CharacterParams swapped{p.b, p.a, p.l};
    bool match = agrees(oc.ch, assemble_character(p, prec)) || agrees(oc.ch, assemble_character(swapped, prec));
    o.require(match, nl.name + " assembled");
    o.require(!check_nonnegative_integral(oc.ch), nl.name + " nonnegative");
    long units = 2 * static_cast<long>(short_vectors(nl.lattice, Rational(1)).size());
    o.require(p.l == units, nl.name + " l");
    o.note << " " << nl.name << "=(" << p.a << "," << p.b << "," << p.l << ")";
  }
  double s = seconds_since(t);
  o.require(s < kCharacterSeconds, "runtime");
  o.note << " " << s << " s";
}

void modularity(Outcome& o) {
  const std::complex<double> i(0, 1);
  double rf = s_transform_residual(build_basis_F(40), i);
  double rg = s_transform_residual(build_basis_G(40), i);
  o.require(rf < kResidualTol, "F residual");
  o.require(rg < kResidualTol, "G residual");
  auto w = weil_matrices(form_from_symbol("2_II^{+2}"));
  const int sign[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
  const int tdiag[4] = {1, 1, 1, -1};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      Phase s{sign[a][b] > 0 ? Rational(0) : Rational(1, 2), Rational(1, 4)};
      o.require(w.s[a][b] == s, "S entry");
      Phase t = a == b ? Phase{tdiag[a] > 0 ? Rational(0) : Rational(1, 2), Rational(1)} : Phase{0, 0};
      o.require(w.t[a][b] == t || (a != b && w.t[a][b].magnitude_sq == 0), "T entry");
    }
  o.note << " residuals " << rf << ", " << rg;
}

void milgram(Outcome& o) {
  int n = 0;
  for (const auto& name : bundled_lattice_names()) {
    auto b = bundled_lattice(name);
    if (!b.lattice.is_even()) continue;
    ++n;
    o.require(signature_mod8(discriminant_form(b.lattice).form) == static_cast<int>(b.lattice.rank() % 8), name);
  }
  o.note << " " << n << " even lattices";
}

void glueing(Outcome& o) {
  const auto& g = graph16();
  std::map<std::string, std::multiset<std::string>> pairs = {
      {"D16", {"D16+", "D16+"}},    {"(D4D12)+", {"D16+", "D16+"}}, {"(A1(2)A15)++", {"D16+", "D16+"}},
      {"(D8^2)+", {"D16+", "E8^2"}}, {"D8E8", {"E8^2", "E8^2"}},     {"(A1^2E7^2)+", {"E8^2", "E8^2"}}};
  for (const auto& e : g.edges) {
    auto r = glueing_type(glue_input_from_lattice(e.k));
    o.require(r.type == GlueType::I, e.k_name + " type I");
    auto ext = three_extensions(r);
    if (!ext.even[0].lattice || !ext.even[1].lattice) {
      o.require(false, e.k_name + " extensions");
      continue;
    }
    std::multiset<std::string> got = {describe_lattice(ext.even[0].lattice->lattice),
                                      describe_lattice(ext.even[1].lattice->lattice)};
    o.require(pairs.count(e.k_name) && got == pairs.at(e.k_name), e.k_name + " neighbours");
  }

  using namespace glueoracle;
  const std::vector<std::string> symbols = {"1",        "2_1^{+1}", "2_7^{+1}", "2_II^{+2}", "2_II^{-2}",
                                            "4_1^{+1}", "4_7^{+1}", "4_3^{-1}", "2_2^{+2}",  "3^{+1}"};
  auto form = [](const std::string& s) { return s == "1" ? trivial_form() : form_from_symbol(s); };
  std::map<std::string, int> hits;
  for (const auto& sw : symbols)
    for (const auto& sk : symbols) {
      DiscriminantForm w = form(sw), k = form(sk);
      if (w.size() * k.size() > 64) continue;
      DiscriminantForm total = direct_sum(w, k);
      for (const auto& i : glue_subgroups(w, total)) {
        OracleCase oc = oracle(w, k, total, i);
        GlueInput in{w, k, generate_subgroup(k, oc.a_gens), oc.tau, {}, {}};
        in.a.gens = oc.a_gens;
        std::string got;
        try {
          got = to_string(glueing_type(in).type);
        } catch (const DomainError&) {
          got = "rejected";
        }
        std::string want = oc.valid ? oc.type : "rejected";
        o.require(got == want, sw + " x " + sk + ": " + got + " vs " + want);
        ++hits[want];
      }
    }
  for (const char* t : {"I", "IIa", "IIb", "III"}) o.require(hits[t] > 0, std::string("no ") + t + " case");
  o.note << " oracle I/IIa/IIb/III/rejected " << hits["I"] << "/" << hits["IIa"] << "/" << hits["IIb"] << "/"
         << hits["III"] << "/" << hits["rejected"];
}

void inner_orbits(Outcome& o) {
  const auto& g = graph16();
  if (g.nodes.size() != 2) {
    o.require(false, "graph");
    return;
  }
  const std::size_t want[2] = {3, 4};
  for (std::size_t n = 0; n < 2; ++n) {
    const auto& node = g.nodes[n];
    auto inner = classify_inner_lattice_node(node.lattice, node.gens);
    o.require(inner.size() == want[n], node.name + " orbit count");
    std::vector<const NeighbourEdge*> edges;
    for (const auto& e : g.edges)
      if (e.from == n || e.to == n) edges.push_back(&e);
    o.require(edges.size() == inner.size(), node.name + " edge count");
    // Bijection: each L^h matches exactly one incident edge and vice versa.
    std::vector<int> used(edges.size(), 0);
    for (const auto& io : inner) {
      int matches = 0;
      for (std::size_t j = 0; j < edges.size(); ++j)
        if (is_isometric(io.fixed.lattice, edges[j]->k)) {
          ++matches;
          ++used[j];
        }
      o.require(matches == 1, node.name + " orbit match");
    }
    for (int u : used) o.require(u == 1, node.name + " edge match");
    o.note << " " << node.name << ": " << inner.size();
  }
}

void data_validation(Outcome& o) {
  auto rep = validate_count_tables();
  o.require(rep.ok(), "count tables");
  o.require(rep.total == 969, "total");
  o.require(rep.row_a_total == 273 && rep.numbers_rank24_odd == 273, "273");
  auto problems = validate_bundle();
  for (const auto& p : problems) o.require(false, p);
  o.note << " total " << rep.total << ", per type " << rep.per_type["I"] << "/" << rep.per_type["IIa"] << "/"
         << rep.per_type["IIb"] << "/" << rep.per_type["III"] << ", row A " << rep.row_a_total;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"rank-8 graph", graph8},
      {"rank-16 graph", graph16_check},
      {"odd unimodular counts d=8..16", odd_counts},
      {"F and G coefficients", basis_coefficients},
      {"f + 2f_+ + 48 = j", j_identity},
      {"rank-24 characters and dimension formula", rank24_characters},
      {"Weil representation and S-residuals", modularity},
      {"Milgram signatures", milgram},
      {"glueing classifier", glueing},
      {"inner orbits of E8^2 and D16+", inner_orbits},
      {"count tables", data_validation},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << " [exception: " << e.what() << "]";
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ":" << o.note.str()
              << std::endl;
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
