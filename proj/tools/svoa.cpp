#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "svoa/bundle.hpp"
#include "svoa/glue.hpp"
#include "svoa/neighbour.hpp"
#include "svoa/qchar.hpp"

using namespace svoa;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

std::string matrix_rows(const QMatrix& m) {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << "  [";
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << to_string(m(i, j));
    out << "]\n";
  }
  return out.str();
}

std::complex<double> parse_tau(const std::string& s) {
  static const std::regex re(R"(^\s*([+-]?[0-9.]+(?:e[+-]?\d+)?)?\s*(?:([+-])\s*([0-9.]*)\s*i)?\s*$|^\s*([+-]?[0-9.]*)\s*i\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw DomainError("cannot parse tau '" + s + "'");
  double re_part = 0, im_part = 0;
  if (m[4].matched) {
    std::string t = m[4].str();
    im_part = t.empty() || t == "+" ? 1 : t == "-" ? -1 : std::stod(t);
  } else {
    if (m[1].matched) re_part = std::stod(m[1].str());
    if (m[2].matched) {
      im_part = m[3].str().empty() ? 1 : std::stod(m[3].str());
      if (m[2].str() == "-") im_part = -im_part;
    }
  }
  if (im_part <= 0) throw DomainError("tau must lie in the upper half plane");
  return {re_part, im_part};
}

void print_vector_form(const std::string& name, const VectorForm4& v) {
  for (std::size_t i = 0; i < 4; ++i) std::cout << name << "[" << i << "] = " << v[i].to_string() << "\n";
}

/// Rank-24 odd lattices by name, or any lattice spec.
Lattice odd_lattice(const std::string& spec) {
  if (spec == "odd-leech" || spec == "d24-neighbour") {
    for (auto& nl : rank24_odd_lattices())
      if ((spec == "odd-leech" && nl.name == "odd Leech") || (spec == "d24-neighbour" && nl.name == "Z^24 from D24+"))
        return nl.lattice;
  }
  return resolve_lattice(spec).lattice;
}

long roots_plus_rank(const Lattice& l) { return static_cast<long>(l.rank() + root_system(l).root_count); }

// ---- lattice -------------------------------------------------------------------

int lattice_info(const std::string& spec) {
  auto b = resolve_lattice(spec);
  const Lattice& l = b.lattice;
  std::cout << "name: " << (b.name.empty() ? spec : b.name) << "\n";
  std::cout << "rank: " << l.rank() << "\n";
  std::cout << "det: " << to_string(l.det()) << "\n";
  std::cout << "integral: " << (l.is_integral() ? "yes" : "no") << "\n";
  std::cout << "even: " << (l.is_even() ? "yes" : "no") << "\n";
  std::cout << "min norm: " << to_string(minimum_norm(l)) << "\n";
  auto rs = root_system(l);
  std::cout << "roots: " << (rs.components.empty() ? "none" : rs.name()) << " (" << rs.root_count << ")\n";
  if (l.is_integral()) std::cout << "description: " << describe_lattice(l) << "\n";
  if (l.is_even() && l.rank() > 0) {
    auto d = discriminant_form(l).form;
    std::cout << "discriminant group:";
    for (auto o : d.orders()) std::cout << " Z/" << o;
    if (d.orders().empty()) std::cout << " trivial";
    std::cout << "\nsignature mod 8: " << signature_mod8(d) << "\n";
  }
  return kOk;
}

int lattice_isom(const std::string& a, const std::string& b) {
  Lattice la = resolve_lattice(a).lattice, lb = resolve_lattice(b).lattice;
  auto iso = is_isometric(la, lb);
  if (!iso) {
    std::cout << "not isomorphic\n";
    return kCheckFailed;
  }
  std::cout << "isomorphic\nwitness (columns: images of the basis of " << a << "):\n" << matrix_rows(iso->matrix);
  return kOk;
}

int lattice_roots(const std::string& spec) {
  auto rs = root_system(resolve_lattice(spec).lattice);
  std::cout << (rs.components.empty() ? "none" : rs.name()) << "\n";
  for (const auto& c : rs.components)
    std::cout << c.series << c.rank << ": " << root_count_of(c) << " roots\n";
  std::cout << "total: " << rs.root_count << "\n";
  return kOk;
}

int lattice_split(const std::string& spec) {
  Lattice l = resolve_lattice(spec).lattice;
  auto s = split_unit_vectors(l);
  std::cout << "l=" << s.l << ", stump rank " << s.stump.lattice.rank() << "\n";
  if (s.stump.lattice.rank() > 0) std::cout << "stump: " << describe_lattice(s.stump.lattice) << "\n";
  return kOk;
}

// ---- graph ---------------------------------------------------------------------

int graph(std::size_t rank, const std::string& out) {
  auto g = build_graph(standard_seeds(rank));
  std::ostringstream summary;
  summary << "nodes=" << g.nodes.size() << ", edges=" << g.edges.size();
  if (out == "dot") {
    std::cout << g.to_dot();
    std::cerr << summary.str() << "\n";
  } else if (out == "json") {
    std::cout << g.to_json();
    std::cerr << summary.str() << "\n";
  } else {
    for (std::size_t i = 0; i < g.nodes.size(); ++i) std::cout << "node " << i << ": " << g.nodes[i].name << "\n";
    for (const auto& e : g.edges)
      std::cout << "edge " << e.from << " - " << e.to << ": K=" << e.k_name << ", odd=" << e.odd_name
                << ", kind " << e.kind << (e.has_units ? ", units" : "") << "\n";
    std::cout << summary.str() << "\n";
  }
  return kOk;
}

// ---- classify ------------------------------------------------------------------

int classify(std::size_t max_rank, bool check) {
  auto c = classify_odd_unimodular(max_rank);
  std::cout << "rank,odd,stump,even\n";
  for (const auto& r : c.rows) std::cout << r.rank << "," << r.odd << "," << r.new_odd_stumps << "," << r.even << "\n";
  if (!check) return kOk;
  int status = kOk;
  for (const auto& row : numbers_table()) {
    if (!is_integer(row.c) || row.c > Rational(static_cast<long>(max_rank))) continue;
    const auto& r = c.rows[row.c.get_num().get_ui()];
    auto cmp = [&](const char* what, const std::optional<long>& want, std::size_t got) {
      if (want && *want != static_cast<long>(got)) {
        std::cerr << "FAIL rank " << r.rank << " " << what << ": table " << *want << ", computed " << got << "\n";
        status = kCheckFailed;
      }
    };
    cmp("odd", row.lattice_odd, r.odd);
    cmp("stump", row.lattice_stump, r.new_odd_stumps);
    cmp("even", row.lattice_even, r.even);
  }
  std::cerr << (status == kOk ? "PASS" : "FAIL") << " numbers table\n";
  return status;
}

// ---- characters ----------------------------------------------------------------

int char_basis(const Rational& prec) {
  print_vector_form("F", build_basis_F(prec));
  print_vector_form("G", build_basis_G(prec));
  return kOk;
}

int char_assemble(long a, long b, long l, const Rational& prec, bool check) {
  CharacterParams p{a, b, l};
  if (!p.admissible()) throw DomainError("inadmissible (a, b, l)");
  auto ch = assemble_character(p, prec);
  print_vector_form("Ch", ch);
  if (!check) return kOk;
  auto bad = check_nonnegative_integral(ch);
  if (bad) {
    std::cout << "FAIL nonnegative-integral: component " << bad->component << ", q^" << to_string(bad->exponent)
              << " has coefficient " << to_string(bad->coeff) << "\n";
    return kCheckFailed;
  }
  std::cout << "PASS nonnegative-integral\n";
  return kOk;
}

int char_from_lattice(const std::string& spec, const Rational& prec) {
  Lattice l = odd_lattice(spec);
  if (l.rank() != 24 || !l.is_unimodular() || l.is_even()) throw DomainError("need an odd unimodular lattice of rank 24");
  auto oc = character_from_odd_lattice(l, prec);
  print_vector_form("Ch", oc.ch);
  long d0 = roots_plus_rank(oc.even_part), w1 = roots_plus_rank(oc.neighbours[0]),
       w2 = roots_plus_rank(oc.neighbours[1]);
  auto p = abl_from_dims(d0, w1, w2);
  std::cout << "dims: " << d0 << " " << w1 << " " << w2 << "\n";
  std::cout << "a=" << p.a << " b=" << p.b << " l=" << p.l << "\n";
  CharacterParams swapped{p.b, p.a, p.l};
  bool match = agrees(oc.ch, assemble_character(p, prec)) || agrees(oc.ch, assemble_character(swapped, prec));
  bool units = p.l == static_cast<long>(2 * short_vectors(l, Rational(1)).size());
  bool nonneg = !check_nonnegative_integral(oc.ch);
  std::cout << (match ? "PASS" : "FAIL") << " assembled character\n";
  std::cout << (units ? "PASS" : "FAIL") << " l equals the number of norm-1 vectors\n";
  std::cout << (nonneg ? "PASS" : "FAIL") << " nonnegative-integral\n";
  return match && units && nonneg ? kOk : kCheckFailed;
}

int char_s_check(const std::string& tau_text, const Rational& prec, double tol) {
  auto tau = parse_tau(tau_text);
  double rf = s_transform_residual(build_basis_F(prec), tau);
  double rg = s_transform_residual(build_basis_G(prec), tau);
  std::cout << "F residual " << rf << "\nG residual " << rg << "\n";
  bool ok = rf < tol && rg < tol;
  std::cout << (ok ? "PASS" : "FAIL") << " S-transformation below " << tol << "\n";
  return ok ? kOk : kCheckFailed;
}

// ---- validate ------------------------------------------------------------------

int validate() {
  int status = kOk;
  auto problems = validate_bundle();
  for (const auto& p : problems) std::cout << "FAIL " << p << "\n";
  if (problems.empty()) std::cout << "PASS bundled files load and validate\n";
  else status = kCheckFailed;

  auto rep = validate_count_tables();
  std::ostringstream line;
  line << "total SVOSAs: " << rep.total << "; per-type " << rep.per_type["I"] << "/" << rep.per_type["IIa"] << "/"
       << rep.per_type["IIb"] << "/" << rep.per_type["III"] << "; rank-24 odd lattices: " << rep.numbers_rank24_odd;
  std::cout << (rep.ok() ? "PASS " : "FAIL ") << line.str() << "\n";
  for (const auto& p : rep.problems) std::cout << "  " << p << "\n";
  if (!rep.ok()) status = kCheckFailed;

  auto rows = mtc_table();
  std::ostringstream sum;
  sum << std::hex << mtc_checksum(rows);
  std::cout << "PASS table of 16 pointed categories, checksum " << sum.str() << "\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattices, discriminant forms, neighbour graphs and characters for self-dual VOSAs"};
  app.require_subcommand(1);
  int threads = 1;
  std::string data;
  app.add_option("--threads", threads, "Bound on internal parallelism")->check(CLI::PositiveNumber);
  app.add_option("--data-dir", data, "Directory with the bundled data files");

  int status = kOk;
  std::function<int()> action;

  auto* lat = app.add_subcommand("lattice", "Lattice invariants");
  lat->require_subcommand(1);
  std::string spec_a, spec_b;
  auto* info = lat->add_subcommand("info", "Rank, determinant, parity, roots");
  info->add_option("lattice", spec_a, "A3, D16, E8, Z24, a bundled name or a file")->required();
  info->callback([&] { action = [&] { return lattice_info(spec_a); }; });
  auto* isom = lat->add_subcommand("isom", "Isometry test with witness");
  isom->add_option("a", spec_a)->required();
  isom->add_option("b", spec_b)->required();
  isom->callback([&] { action = [&] { return lattice_isom(spec_a, spec_b); }; });
  auto* roots = lat->add_subcommand("roots", "Root system");
  roots->add_option("lattice", spec_a)->required();
  roots->callback([&] { action = [&] { return lattice_roots(spec_a); }; });
  auto* split = lat->add_subcommand("split", "Split off unit vectors");
  split->add_option("lattice", spec_a)->required();
  split->callback([&] { action = [&] { return lattice_split(spec_a); }; });

  auto* gr = app.add_subcommand("graph", "2-neighbourhood graph of even unimodular lattices");
  std::size_t rank = 8;
  std::string out;
  gr->add_option("--rank", rank, "0, 8 or 16")->check(CLI::IsMember({0, 8, 16}));
  gr->add_option("--out", out, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  gr->callback([&] { action = [&] { return graph(rank, out); }; });

  auto* cl = app.add_subcommand("classify", "Odd unimodular lattices by rank (CSV)");
  std::size_t max_rank = 16;
  bool check_table = false;
  cl->add_option("--max-rank", max_rank, "At most 16")->check(CLI::Range(0, 16));
  cl->add_flag("--check", check_table, "Compare with the bundled numbers table");
  cl->callback([&] { action = [&] { return classify(max_rank, check_table); }; });

  auto* ch = app.add_subcommand("char", "Characters at central charge 24");
  ch->require_subcommand(1);
  std::string prec_text = "3";
  long pa = 0, pb = 0, pl = 0;
  bool check_char = false;
  std::string tau_text = "i";
  double tol = 1e-6;
  auto* basis = ch->add_subcommand("basis", "F and G expansions");
  basis->add_option("--prec", prec_text, "Exponent cutoff");
  basis->callback([&] { action = [&] { return char_basis(parse_rational(prec_text)); }; });
  auto* assemble = ch->add_subcommand("assemble", "Character for (a, b, l)");
  assemble->add_option("-a", pa)->required();
  assemble->add_option("-b", pb)->required();
  assemble->add_option("-l", pl)->required();
  assemble->add_option("--prec", prec_text);
  assemble->add_flag("--check", check_char, "Check nonnegative integral coefficients");
  assemble->callback(
      [&] { action = [&] { return char_assemble(pa, pb, pl, parse_rational(prec_text), check_char); }; });
  auto* from = ch->add_subcommand("from-lattice", "Character of a rank-24 odd unimodular lattice");
  from->add_option("lattice", spec_a, "Z24, E8+Z16, odd-leech, d24-neighbour or a file")->required();
  from->add_option("--prec", prec_text);
  from->callback([&] { action = [&] { return char_from_lattice(spec_a, parse_rational(prec_text)); }; });
  auto* scheck = ch->add_subcommand("s-check", "Numerical S-transformation residual of F and G");
  scheck->add_option("--tau", tau_text, "Point in the upper half plane, e.g. i or 0.1+1.1i");
  scheck->add_option("--prec", prec_text);
  scheck->add_option("--tol", tol);
  scheck->callback([&] { action = [&] { return char_s_check(tau_text, parse_rational(prec_text), tol); }; });

  auto* val = app.add_subcommand("validate", "Validate the bundled data");
  val->callback([&] { action = [&] { return validate(); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    if (!data.empty()) set_data_dir(data);
    status = action ? action() : kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return status;
}
