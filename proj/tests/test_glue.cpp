#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "glue_oracle.hpp"
#include "svoa/glue.hpp"
#include "svoa/neighbour.hpp"

using namespace svoa;

using namespace glueoracle;

TEST_CASE("classifier agrees with a subgroup oracle") {
  const std::vector<std::string> symbols = {"1",         "2_1^{+1}", "2_7^{+1}", "2_II^{+2}", "2_II^{-2}",
                                            "4_1^{+1}",  "4_7^{+1}", "4_3^{-1}", "2_2^{+2}",  "3^{+1}",
                                            "3^{-1}",    "2_II^{+2}2_1^{+1}"};
  auto form = [](const std::string& s) { return s == "1" ? trivial_form() : form_from_symbol(s); };
  std::map<std::string, int> hits;
  int rejected = 0;
  for (const auto& sw : symbols)
    for (const auto& sk : symbols) {
      DiscriminantForm w = form(sw), k = form(sk);
      if (w.size() * k.size() > 64) continue;
      DiscriminantForm total = direct_sum(w, k);
      for (const Subset& i : glue_subgroups(w, total)) {
        OracleCase oc = oracle(w, k, total, i);
        GlueInput in{w, k, generate_subgroup(k, oc.a_gens), oc.tau, {}, {}};
        in.a.gens = oc.a_gens;
        INFO(sw << " x " << sk << " |I|=" << i.size());
        if (!oc.valid) {
          CHECK_THROWS_AS(glueing_type(in), DomainError);
          ++rejected;
          continue;
        }
        GlueResult r = glueing_type(in);
        CHECK(to_string(r.type) == oc.type);
        ++hits[oc.type];
        CHECK(r.gamma_norms[0] == 0);
        CHECK(r.gamma_norms[1] == 0);
        CHECK(r.gamma_norms[2] == Rational(1, 2));
        Subset ip = perp(total, i);
        for (const auto& g : r.gammas) CHECK(std::binary_search(ip.begin(), ip.end(), total.index_of(g)));
        auto ext = three_extensions(r);
        for (const auto& e : ext.even) {
          CHECK(e.even);
          CHECK(e.subgroup.size() == 2 * i.size());
          for (const auto& x : e.subgroup.elements) CHECK(total.q(x) == 0);
        }
        CHECK_FALSE(ext.odd.even);
        CHECK(ext.even[0].subgroup.elements != ext.even[1].subgroup.elements);
        if (r.type == GlueType::I) {
          // I^perp = I + {0} x A^perp.
          Subset ak;
          for (auto& x : in.a.elements) ak.push_back(k.index_of(x));
          Subset ap = perp(k, ak);
          CHECK(ap.size() == 4);
          std::vector<DFElement> gens = r.i.gens;
          for (Index x : ap) {
            DFElement e(w.generators(), 0);
            auto y = k.element(x);
            e.insert(e.end(), y.begin(), y.end());
            gens.push_back(e);
          }
          CHECK(generate_subgroup(total, gens).size() == ip.size());
        }
        if (r.type == GlueType::IIa || r.type == GlueType::IIb) {
          REQUIRE(r.b);
          CHECK(*r.b == *oc.b);
          DFElement bb = *r.b_prime;
          bb.insert(bb.end(), r.b->begin(), r.b->end());
          CHECK(std::binary_search(i.begin(), i.end(), total.index_of(bb)));
          CHECK(in.a.contains(k, *r.b));
        }
        if (r.type == GlueType::IIb) {
          DFElement zb(w.generators(), 0);
          zb.insert(zb.end(), r.b->begin(), r.b->end());
          CHECK(r.quotient.class_of(zb) == r.quotient.class_of(r.gammas[0]));
        }
      }
    }
  CHECK(hits["I"] > 0);
  CHECK(hits["IIa"] > 0);
  CHECK(hits["IIb"] > 0);
  CHECK(hits["III"] > 0);
  CHECK(rejected > 0);
  MESSAGE("I " << hits["I"] << ", IIa " << hits["IIa"] << ", IIb " << hits["IIb"] << ", III " << hits["III"]
               << ", rejected " << rejected);
}

TEST_CASE("glueing type examples") {
  DiscriminantForm h = form_from_symbol("2_II^{+2}");
  // W trivial, K = D16: type I.
  auto r16 = glueing_type(glue_input_from_lattice(make_lattice('D', 16)));
  CHECK(r16.type == GlueType::I);
  auto ext = three_extensions(r16);
  REQUIRE(ext.even[0].lattice);
  REQUIRE(ext.even[1].lattice);
  REQUIRE(ext.odd.lattice);
  CHECK(describe_lattice(ext.even[0].lattice->lattice) == "D16+");
  CHECK(describe_lattice(ext.even[1].lattice->lattice) == "D16+");
  CHECK(describe_lattice(ext.odd.lattice->lattice) == "Z^16");

  // K = D8: the E8 neighbours and Z^8.
  auto ext8 = three_extensions(glueing_type(glue_input_from_lattice(make_lattice('D', 8))));
  CHECK(is_isometric(ext8.even[0].lattice->lattice, make_lattice('E', 8)));
  CHECK(is_isometric(ext8.even[1].lattice->lattice, make_lattice('E', 8)));
  CHECK(is_isometric(ext8.odd.lattice->lattice, make_lattice('Z', 8)));

  // A_K trivial: type III.
  GlueInput iii{h, trivial_form(), generate_subgroup(trivial_form(), {}), {}, {}, {}};
  auto r3 = glueing_type(iii);
  CHECK(r3.type == GlueType::III);
  CHECK(r3.index_w == 4);

  // A_W = A_K = 2_II^{+2}, A = A' = <norm-0 element>: type IIb.
  DFElement null;
  for (const auto& x : h.elements())
    if (x != h.zero() && h.q(x) == 0) {
      null = x;
      break;
    }
  GlueInput ii{h, h, generate_subgroup(h, {null}), {null}, {}, {}};
  ii.a.gens = {null};
  auto r2 = glueing_type(ii);
  CHECK(r2.type == GlueType::IIb);
  CHECK(r2.quotient.form.size() == 4);
  CHECK(is_isomorphic_df(r2.quotient.form, h));

  // Errors: index product 16, and a quotient that is not hyperbolic.
  GlueInput big{h, h, generate_subgroup(h, {}), {}, {}, {}};
  CHECK_THROWS_AS(glueing_type(big), DomainError);
  CHECK_THROWS_AS(glueing_type(glue_input_from_lattice(make_lattice('A', 3))), DomainError);
  CHECK_THROWS_AS(glueing_type(glue_input_from_lattice(rescale(make_lattice('A', 1), 2))), DomainError);
  CHECK_THROWS_AS(three_extensions(GlueResult{}), DomainError);
}

TEST_CASE("lattice rows of the rank-16 graph are type I") {
  auto g = build_graph(standard_seeds(16));
  REQUIRE(g.edges.size() == 6);
  std::map<std::string, std::multiset<std::string>> pairs = {
      {"D16", {"D16+", "D16+"}},         {"(D4D12)+", {"D16+", "D16+"}}, {"(A1(2)A15)++", {"D16+", "D16+"}},
      {"(D8^2)+", {"D16+", "E8^2"}},      {"D8E8", {"E8^2", "E8^2"}},     {"(A1^2E7^2)+", {"E8^2", "E8^2"}}};
  for (const auto& e : g.edges) {
    INFO(e.k_name);
    auto r = glueing_type(glue_input_from_lattice(e.k));
    CHECK(r.type == GlueType::I);
    auto ext = three_extensions(r);
    REQUIRE(ext.even[0].lattice);
    REQUIRE(ext.even[1].lattice);
    REQUIRE(ext.odd.lattice);
    std::multiset<std::string> got = {describe_lattice(ext.even[0].lattice->lattice),
                                      describe_lattice(ext.even[1].lattice->lattice)};
    CHECK(got == pairs.at(e.k_name));
    CHECK(is_isometric(ext.odd.lattice->lattice, e.odd));
  }
}

TEST_CASE("pointed modular categories") {
  auto rows = mtc_table();
  REQUIRE(rows.size() == 16);
  auto r0 = mtc_table_row(0);
  CHECK(r0.category == "C(2_II^{+2})");
  CHECK(r0.weights == std::vector<std::string>{"[0]", "[1/2]", "0", "0"});
  auto r1 = mtc_table_row(1);
  CHECK(r1.fusion == "Ising");
  CHECK(r1.weights == std::vector<std::string>{"[0]", "[1/2]", "(1/16)"});
  auto r8 = mtc_table_row(8);
  CHECK(r8.category == "C(2_II^{-2})");
  CHECK(r8.weights == std::vector<std::string>{"[0]", "[1/2]", "1/2", "1/2"});
  for (int c = 0; c < 16; ++c) {
    auto r = mtc_table_row(c);
    if (c % 2) {
      CHECK(r.fusion == "Ising");
    } else {
      CHECK(r.fusion == ((c / 2) % 2 ? "Z4" : "Z2xZ2"));
    }
  }
  CHECK_THROWS_AS(mtc_table_row(16), DomainError);
  CHECK_THROWS_AS(mtc_table_row(-1), DomainError);
  auto changed = rows;
  changed[3].weights[2] = "(5/16)";
  CHECK(mtc_checksum(changed) != mtc_checksum(rows));
}

TEST_CASE("count table validation") {
  auto rep = validate_count_tables();
  CHECK(rep.ok());
  CHECK(rep.total == 969);
  CHECK(rep.per_type == std::map<std::string, long>{{"I", 506}, {"IIa", 167}, {"IIb", 171}, {"III", 125}});
  CHECK(rep.row_a_total == 273);
  CHECK(rep.numbers_rank24_odd == 273);

  auto rows = genera_table();
  rows[0].edges_loop += 1;
  auto bad = validate_count_tables(rows, numbers_table());
  CHECK_FALSE(bad.ok());
  CHECK(bad.total == 970);
  CHECK_THROWS_AS(validate_count_tables({}, numbers_table()), DomainError);
}
