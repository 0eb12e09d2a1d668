#include <doctest.h>

#include <bit>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "svoa/bundle.hpp"
#include "svoa/neighbour.hpp"
#include "svoa/qchar.hpp"

using namespace svoa;

namespace {

std::uint64_t norm_count(const Lattice& l, const Rational& norm) {
  for (auto& [n, c] : norm_counts(l, norm))
    if (n == norm) return c;
  return 0;
}

std::size_t unit_vectors(const Lattice& l) { return 2 * short_vectors(l, Rational(1)).size(); }

long roots_plus_rank(const Lattice& l) { return long(l.rank() + root_system(l).root_count); }

}  // namespace

TEST_CASE("Golay code") {
  auto code = golay_code();
  REQUIRE(code.size() == 4096);
  std::map<int, int> weights;
  for (auto w : code) ++weights[std::popcount(w)];
  CHECK(weights == std::map<int, int>{{0, 1}, {8, 759}, {12, 2576}, {16, 759}, {24, 1}});
  // Linear: closed under symmetric difference.
  for (std::size_t i = 0; i < code.size(); i += 97)
    for (std::size_t j = 0; j < code.size(); j += 89)
      CHECK(std::binary_search(code.begin(), code.end(), code[i] ^ code[j]));
}

TEST_CASE("Leech lattice from the Golay code") {
  Embedded e = leech_from_golay();
  const Lattice& leech = e.lattice;
  CHECK(leech.rank() == 24);
  CHECK(leech.det() == 1);
  CHECK(leech.is_even());
  CHECK(minimum_norm(leech) == 4);
  CHECK(norm_count(leech, Rational(4)) == 196560);

  auto bundled = bundled_lattice("Leech");
  CHECK(bundled.lattice.det() == 1);
  CHECK(bundled.lattice.is_even());
  CHECK(minimum_norm(bundled.lattice) == 4);
  CHECK(norm_count(bundled.lattice, Rational(4)) == 196560);
  CHECK(fingerprint(bundled.lattice) == fingerprint(leech));
  REQUIRE(bundled.coordinates);
  CHECK(bundled.coordinate_scale == Rational(1, 8));
}

TEST_CASE("bundled lattices load and validate") {
  auto names = bundled_lattice_names();
  CHECK(names.size() >= 8);
  for (const auto& n : names) {
    auto b = bundled_lattice(n);
    CHECK(b.lattice.is_integral());
    for (const auto& g : b.extra) CHECK(g.verify(b.lattice, b.lattice));
  }
  CHECK(root_system(bundled_lattice("D24+").lattice).name() == "D24");
  CHECK(root_system(bundled_lattice("E8^2").lattice).name() == "E8^2");
  CHECK(short_vectors(bundled_lattice("Z24").lattice, Rational(1)).size() == 24);

  auto problems = validate_bundle();
  for (auto& p : problems) MESSAGE(p);
  CHECK(problems.empty());

  CHECK(resolve_lattice("A3").lattice.det() == 4);
  CHECK(resolve_lattice("E8^2").lattice.rank() == 16);
  CHECK_THROWS_AS(resolve_lattice("no-such-lattice"), DomainError);
}

TEST_CASE("lattice file errors") {
  auto dir = std::filesystem::temp_directory_path() / "svoa_bundle_test";
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    auto p = dir / name;
    std::ofstream(p) << text;
    return p;
  };
  auto bad_gram = write("bad.json", R"({"name": "bad", "recipe": {"gram": [[1, 2], [2, 1]]}})");
  CHECK_THROWS_AS(load_lattice_file(bad_gram), DomainError);
  auto bad_expect =
      write("expect.json", R"({"name": "e", "recipe": {"root": "E8"}, "expect": {"roots": 224}})");
  CHECK_THROWS_AS(load_lattice_file(bad_expect), DomainError);
  auto bad_gen = write("gen.json", R"({"name": "g", "recipe": {"root": "A2"},
    "extra_generators": [{"matrix": [[2, 0], [0, 1]]}]})");
  CHECK_THROWS_AS(load_lattice_file(bad_gen), DomainError);
  auto ok = write("ok.json", R"({"name": "a1a1", "recipe": {"sum": [{"root": "A1"}, {"root": "A1"}]},
    "extra_generators": [{"permutation": [1, 0]}]})");
  auto b = load_lattice_file(ok);
  CHECK(b.lattice.det() == 4);
  CHECK(b.extra.size() == 1);
  try {
    load_lattice_file(bad_gram);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("bad.json") != std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("csv parsing") {
  CHECK(split_csv_line(R"(a,"b,c",d)") == std::vector<std::string>{"a", "b,c", "d"});
  CHECK(split_csv_line("a,,") == std::vector<std::string>{"a", "", ""});

  std::stringstream empty("type,commutant,lattice_genus,neighbour_pair,rank_triple,edges_nonloop,edges_loop\n");
  CHECK_THROWS_AS(parse_genera_csv(empty), DomainError);

  std::stringstream bad(
      "type,commutant,lattice_genus,neighbour_pair,rank_triple,edges_nonloop,edges_loop\n"
      "I,C(1),\"II_{24,0}(2_II^{+2})\",A/A,24 24 24,122,151\n"
      "I,C(1),\"II_{24,0}(2_II^{+2})\",A/A,24 24 24,x,151\n");
  try {
    parse_genera_csv(bad);
    FAIL("corrupted row accepted");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("row 3") != std::string::npos);
  }
  const std::string header =
      "c,svosa_odd,svosa_stump,svosa_even,lattice_odd,lattice_stump,lattice_even,tentative\n";
  std::stringstream numbers(header + "1/2,1,0,,,,,\n");
  auto parsed = parse_numbers_csv(numbers);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0].c == Rational(1, 2));
  CHECK(parsed[0].svosa_odd == 1);
  CHECK(!parsed[0].lattice_odd);
  std::stringstream badnum(header + "1/2,-,0,,,,,\n");
  CHECK_THROWS_AS(parse_numbers_csv(badnum), DomainError);
}

TEST_CASE("count tables") {
  auto rows = genera_table();
  std::map<std::string, long> per_type;
  long total = 0;
  for (auto& r : rows) {
    per_type[r.type] += r.edges_nonloop + r.edges_loop;
    total += r.edges_nonloop + r.edges_loop;
  }
  CHECK(total == 969);
  CHECK(per_type == std::map<std::string, long>{{"I", 506}, {"IIa", 167}, {"IIb", 171}, {"III", 125}});
  CHECK(rows[0].edges_nonloop + rows[0].edges_loop == 273);

  auto numbers = numbers_table();
  REQUIRE(numbers.size() == 49);
  CHECK(numbers.back().c == 24);
  CHECK(numbers.back().lattice_odd == 273);
  CHECK(numbers.back().svosa_odd == 969);
  CHECK(numbers.back().tentative.count("svosa_odd"));
  CHECK(!numbers[1].lattice_odd);
}

TEST_CASE("odd lattice counts against the numbers table") {
  auto table = numbers_table();
  auto c = classify_odd_unimodular(16);
  for (const auto& row : table) {
    if (row.c > 16 || !is_integer(row.c)) continue;
    std::size_t d = std::size_t(row.c.get_num().get_ui());
    INFO("rank " << d);
    CHECK(row.lattice_odd.value_or(-1) == long(c.rows[d].odd));
    CHECK(row.lattice_stump.value_or(-1) == long(c.rows[d].new_odd_stumps));
    if (row.lattice_even) CHECK(*row.lattice_even == long(c.rows[d].even));
  }
}

TEST_CASE("Milgram formula on bundled and root lattices") {
  std::vector<Lattice> even;
  for (const auto& n : bundled_lattice_names()) {
    auto b = bundled_lattice(n);
    if (b.lattice.is_even()) even.push_back(b.lattice);
  }
  for (int n = 1; n <= 10; ++n) even.push_back(make_lattice('A', n));
  for (int n = 2; n <= 12; ++n) even.push_back(make_lattice('D', n));
  for (int n = 6; n <= 8; ++n) even.push_back(make_lattice('E', n));
  even.push_back(rescale(make_lattice('A', 2), 2));
  even.push_back(direct_sum(make_lattice('A', 4), make_lattice('A', 4)));
  for (const auto& l : even) {
    auto d = discriminant_form(l);
    CHECK(signature_mod8(d.form) == int(l.rank() % 8));
  }
}

TEST_CASE("rank-24 characters and the dimension formula") {
  auto start = std::chrono::steady_clock::now();
  const Rational prec(5);
  auto lats = rank24_odd_lattices();
  REQUIRE(lats.size() == 4);
  std::map<std::string, CharacterParams> seen;
  for (const auto& nl : lats) {
    INFO(nl.name);
    REQUIRE(nl.lattice.rank() == 24);
    REQUIRE(nl.lattice.is_unimodular());
    REQUIRE(!nl.lattice.is_even());
    auto oc = character_from_odd_lattice(nl.lattice, prec);
    long d0 = roots_plus_rank(oc.even_part);
    long w1 = roots_plus_rank(oc.neighbours[0]);
    long w2 = roots_plus_rank(oc.neighbours[1]);
    CharacterParams p = abl_from_dims(d0, w1, w2);
    CharacterParams swapped{p.b, p.a, p.l};
    bool match = agrees(oc.ch, assemble_character(p, prec)) ||
                 agrees(oc.ch, assemble_character(swapped, prec));
    CHECK(match);
    CHECK(!check_nonnegative_integral(oc.ch));
    CHECK(p.l == long(unit_vectors(nl.lattice)));
    seen[nl.name] = p;
  }
  CHECK(seen["Z^24"] == CharacterParams{1152, 1152, 48});
  CHECK(seen["E8+Z^16"] == CharacterParams{768, 768, 32});
  auto leech = seen["odd Leech"];
  CHECK(leech.l == 0);
  CHECK(((leech.a == 48 && leech.b == 0) || (leech.a == 0 && leech.b == 48)));
  CHECK(minimum_norm(lats[3].lattice) == 3);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(secs < 120.0);
}
