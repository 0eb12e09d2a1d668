#include "svoa/bundle.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include "svoa/glue.hpp"
#include "svoa/neighbour.hpp"

#ifndef SVOA_DEFAULT_DATA_DIR
#define SVOA_DEFAULT_DATA_DIR "data"
#endif

namespace svoa {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::optional<fs::path>& dir_override() {
  static std::optional<fs::path> dir;
  return dir;
}

json read_json(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw DomainError("cannot open " + file.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DomainError(file.string() + ": " + e.what());
  }
}

Rational rational_of(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw DomainError("expected an integer or a \"p/q\" string, got " + v.dump());
}

QMatrix matrix_of(const json& rows, std::size_t cols = 0) {
  if (!rows.is_array()) throw DomainError("expected an array of rows");
  if (rows.empty()) return QMatrix(0, cols);
  const std::size_t n = rows[0].size();
  QMatrix m(0, n);
  for (const auto& r : rows) {
    if (!r.is_array() || r.size() != n) throw DomainError("ragged matrix in lattice file");
    QVector v;
    for (const auto& x : r) v.push_back(rational_of(x));
    m.append_row(v);
  }
  return m;
}

/// "E8", "D16", "A2", "Z24", "Z" as root-lattice constructors.
std::optional<Lattice> root_lattice(const std::string& s) {
  if (s.size() < 1 || std::string("ADEZ").find(s[0]) == std::string::npos) return std::nullopt;
  std::string digits = s.substr(1);
  if (!digits.empty() && digits[0] == '^') digits = digits.substr(1);
  if (s == "Z") return make_lattice('Z', 1);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) return std::nullopt;
  return make_lattice(s[0], std::stoi(digits));
}

struct Built {
  Built(Lattice l, std::optional<QMatrix> c = std::nullopt, Rational s = 1)
      : lattice(std::move(l)), coordinates(std::move(c)), scale(std::move(s)) {}
  Lattice lattice;
  std::optional<QMatrix> coordinates;  // set by spans inside a scaled standard lattice
  Rational scale = 1;
};

Built build(const json& r, int depth);

Lattice build_recipe(const json& r, int depth) { return build(r, depth).lattice; }

Built build(const json& r, int depth) {
  if (depth > 8) throw DomainError("lattice recipes nest too deeply");
  if (!r.is_object() || r.size() != 1) throw DomainError("a recipe is an object with exactly one key");
  const auto& [kind, arg] = *r.items().begin();
  if (kind == "root") {
    auto l = root_lattice(arg.get<std::string>());
    if (!l) throw DomainError("unknown root lattice " + arg.dump());
    return Built{*l};
  }
  if (kind == "file") return Built{bundled_lattice(arg.get<std::string>()).lattice};
  if (kind == "sum") {
    if (!arg.is_array() || arg.empty()) throw DomainError("sum needs a nonempty list");
    Lattice out = build_recipe(arg[0], depth + 1);
    for (std::size_t i = 1; i < arg.size(); ++i) out = direct_sum(out, build_recipe(arg[i], depth + 1));
    return Built{out};
  }
  if (kind == "gram") return Built{Lattice(matrix_of(arg))};
  if (kind == "span") {
    Lattice amb = build_recipe(arg.at("ambient"), depth + 1);
    if (arg.contains("scale")) amb = Lattice(amb.gram().scaled(rational_of(arg["scale"])));
    Embedded e = span_of(amb, matrix_of(arg.at("generators"), amb.rank()));
    Built b{e.lattice, std::nullopt, amb.gram()(0, 0)};
    if (amb.gram() == QMatrix::identity(amb.rank()).scaled(b.scale)) b.coordinates = e.basis;
    return b;
  }
  if (kind == "glue") {
    Lattice base = build_recipe(arg.at("base"), depth + 1);
    QMatrix v = matrix_of(arg.at("vectors"), base.rank());
    std::vector<LatticeVector> glue;
    for (std::size_t i = 0; i < v.rows(); ++i) glue.push_back(v.row(i));
    return Built{glue_extension(base, glue, arg.value("even", false)).lattice};
  }
  throw DomainError("unknown recipe kind " + kind);
}

Isometry generator_of(const json& g, std::size_t n) {
  if (g.contains("permutation")) {
    auto p = g["permutation"].get<std::vector<std::size_t>>();
    if (p.size() != n) throw DomainError("permutation has the wrong length");
    QMatrix u(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      if (p[j] >= n) throw DomainError("permutation entry out of range");
      u(p[j], j) = 1;
    }
    return {u};
  }
  if (g.contains("matrix")) {
    QMatrix u = matrix_of(g["matrix"]);
    if (u.rows() != n || u.cols() != n) throw DomainError("generator matrix has the wrong size");
    return {u};
  }
  throw DomainError("generator needs a permutation or a matrix");
}

}  // namespace

fs::path data_dir() {
  if (dir_override()) return *dir_override();
  if (const char* env = std::getenv("SVOA_DATA_DIR"); env && *env) return env;
  return SVOA_DEFAULT_DATA_DIR;
}

void set_data_dir(const fs::path& dir) { dir_override() = dir; }

BundledLattice load_lattice_file(const fs::path& file) {
  json j = read_json(file);
  BundledLattice b;
  try {
    b.name = j.value("name", file.stem().string());
    b.description = j.value("description", "");
    Built built = build(j.at("recipe"), 0);
    b.lattice = built.lattice;
    b.lattice.set_name(b.name);
    b.coordinates = built.coordinates;
    b.coordinate_scale = built.scale;
    const std::size_t n = b.lattice.rank();
    if (j.contains("coordinates")) {
      const auto& c = j["coordinates"];
      b.coordinate_scale = c.contains("scale") ? rational_of(c["scale"]) : Rational(1);
      QMatrix basis = matrix_of(c.at("basis"));
      if (basis.rows() != n) throw DomainError("coordinate basis has the wrong number of rows");
      if (!((basis * basis.transpose()).scaled(b.coordinate_scale) == b.lattice.gram()))
        throw DomainError("coordinate basis does not reproduce the Gram matrix");
      b.coordinates = basis;
    }
    if (j.contains("extra_generators"))
      for (const auto& g : j["extra_generators"]) {
        Isometry u = generator_of(g, n);
        if (!u.verify(b.lattice, b.lattice)) throw DomainError("extra generator is not an automorphism");
        b.extra.push_back(u);
      }
    if (j.contains("expect")) {
      const auto& e = j["expect"];
      if (e.contains("rank") && e["rank"].get<std::size_t>() != n) throw DomainError("rank differs from expect");
      if (e.contains("det") && rational_of(e["det"]) != b.lattice.det()) throw DomainError("determinant differs from expect");
      if (e.contains("even") && e["even"].get<bool>() != b.lattice.is_even())
        throw DomainError("parity differs from expect");
      if (e.contains("roots") && root_system(b.lattice).root_count != e["roots"].get<std::size_t>())
        throw DomainError("root count differs from expect");
      if (e.contains("min") && minimum_norm(b.lattice) != rational_of(e["min"]))
        throw DomainError("minimum differs from expect");
    }
  } catch (const json::exception& e) {
    throw DomainError(file.string() + ": " + e.what());
  } catch (const DomainError& e) {
    throw DomainError(file.string() + ": " + e.what());
  }
  return b;
}

BundledLattice bundled_lattice(const std::string& name) {
  fs::path file = data_dir() / "lattices" / (name + ".json");
  if (!fs::exists(file)) throw DomainError("no bundled lattice named " + name);
  return load_lattice_file(file);
}

std::vector<std::string> bundled_lattice_names() {
  std::vector<std::string> out;
  fs::path dir = data_dir() / "lattices";
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") out.push_back(e.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

BundledLattice resolve_lattice(const std::string& spec) {
  if (auto l = root_lattice(spec)) {
    BundledLattice b;
    b.name = l->name();
    b.lattice = *l;
    return b;
  }
  if (fs::exists(data_dir() / "lattices" / (spec + ".json"))) return bundled_lattice(spec);
  if (fs::exists(spec) && fs::is_regular_file(spec)) return load_lattice_file(spec);
  throw DomainError("unknown lattice " + spec);
}

// ---- Golay code and Leech lattice ----------------------------------------------

namespace {

/// Shifts of g(x) = x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1 (the cyclic [23,12]
/// code) with a parity bit in position 23.
std::vector<std::uint32_t> golay_basis() {
  const std::uint32_t g = (1u << 11) | (1u << 10) | (1u << 6) | (1u << 5) | (1u << 4) | (1u << 2) | 1u;
  std::vector<std::uint32_t> basis;
  for (int i = 0; i < 12; ++i) {
    std::uint32_t w = g << i;
    if (__builtin_popcount(w) % 2) w |= 1u << 23;
    basis.push_back(w);
  }
  return basis;
}

}  // namespace

std::vector<std::uint32_t> golay_code() {
  auto basis = golay_basis();
  std::vector<std::uint32_t> code;
  for (std::uint32_t m = 0; m < (1u << 12); ++m) {
    std::uint32_t w = 0;
    for (int i = 0; i < 12; ++i)
      if (m >> i & 1) w ^= basis[i];
    code.push_back(w);
  }
  std::sort(code.begin(), code.end());
  return code;
}

Embedded leech_from_golay() {
  const std::size_t n = 24;
  QMatrix gens(0, n);
  for (std::uint32_t w : golay_basis()) {
    QVector v(n, Rational(0));
    for (std::size_t k = 0; k < n; ++k)
      if (w >> k & 1) v[k] = 2;
    gens.append_row(v);
  }
  for (std::size_t j = 1; j < n; ++j)
    for (int s : {1, -1}) {
      QVector v(n, Rational(0));
      v[0] = 4;
      v[j] = 4 * s;
      gens.append_row(v);
    }
  QVector odd(n, Rational(1));
  odd[0] = -3;
  gens.append_row(odd);
  Lattice amb(QMatrix::identity(n).scaled(Rational(1, 8)));
  Embedded e = span_of(amb, gens);
  e.lattice.set_name("Leech");
  return e;
}

std::vector<NamedLattice> rank24_odd_lattices() {
  std::vector<NamedLattice> out;
  out.push_back({"Z^24", bundled_lattice("Z24").lattice});
  out.push_back({"E8+Z^16", bundled_lattice("E8+Z16").lattice});

  BundledLattice d24 = bundled_lattice("D24+");
  if (!d24.coordinates) throw DomainError("D24+ file lacks coordinates");
  QVector v(24, Rational(0));
  v[0] = 2;
  out.push_back({"Z^24 from D24+", two_neighbour(d24.lattice, vec_mat(v, inverse(*d24.coordinates))).odd.lattice});

  BundledLattice leech = bundled_lattice("Leech");
  if (!leech.coordinates) throw DomainError("Leech file lacks coordinates");
  QVector w(24, Rational(0));
  w[0] = 8;
  out.push_back({"odd Leech", two_neighbour(leech.lattice, vec_mat(w, inverse(*leech.coordinates))).odd.lattice});
  for (auto& o : out) o.lattice.set_name(o.name);
  return out;
}

// ---- discriminant-form dictionary ---------------------------------------------

std::map<std::string, DiscriminantForm> form_dictionary() {
  json j = read_json(data_dir() / "forms.json");
  std::map<std::string, DiscriminantForm> out;
  for (const auto& [name, f] : j.at("symbols").items()) {
    auto orders = f.at("orders").get<std::vector<std::int64_t>>();
    Integer den = rational_of(f.at("qgram_den")).get_num();
    QMatrix q = matrix_of(f.at("qgram_num"), orders.size());
    if (q.rows() != orders.size() || q.cols() != orders.size()) throw DomainError("forms.json: bad shape for " + name);
    for (std::size_t r = 0; r < q.rows(); ++r)
      for (std::size_t c = 0; c < q.cols(); ++c) q(r, c) /= den;
    out.emplace(name, DiscriminantForm(orders, q));
  }
  return out;
}

// ---- CSV tables ----------------------------------------------------------------

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      out.emplace_back();
    } else if (c != '\r') {
      out.back() += c;
    }
  }
  if (quoted) throw DomainError("unbalanced quotes in CSV line: " + line);
  return out;
}

namespace {

/// Header-keyed records; throws with the line number on malformed rows.
std::vector<std::map<std::string, std::string>> read_csv(std::istream& in, const std::vector<std::string>& required) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("empty CSV data");
  auto header = split_csv_line(line);
  for (const auto& r : required)
    if (std::find(header.begin(), header.end(), r) == header.end()) throw DomainError("CSV lacks column " + r);
  std::vector<std::map<std::string, std::string>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw DomainError("CSV row " + std::to_string(lineno) + " has " + std::to_string(cells.size()) + " cells: " + line);
    std::map<std::string, std::string> rec;
    for (std::size_t i = 0; i < header.size(); ++i) rec[header[i]] = cells[i];
    rec["#line"] = std::to_string(lineno);
    rows.push_back(std::move(rec));
  }
  if (rows.empty()) throw DomainError("CSV data has no rows");
  return rows;
}

long parse_count(const std::string& s, const std::map<std::string, std::string>& rec) {
  std::size_t used = 0;
  long v = -1;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
  }
  if (used != s.size() || v < 0) throw DomainError("CSV row " + rec.at("#line") + ": bad count '" + s + "'");
  return v;
}

std::ifstream open_data(const std::string& name) {
  std::ifstream in(data_dir() / name);
  if (!in) throw DomainError("cannot open " + (data_dir() / name).string());
  return in;
}

}  // namespace

std::vector<NumbersRow> parse_numbers_csv(std::istream& in) {
  const std::vector<std::string> cols = {"svosa_odd", "svosa_stump", "svosa_even",
                                         "lattice_odd", "lattice_stump", "lattice_even"};
  std::vector<std::string> req = cols;
  req.push_back("c");
  std::vector<NumbersRow> out;
  for (auto& rec : read_csv(in, req)) {
    NumbersRow r;
    try {
      r.c = parse_rational(rec.at("c"));
    } catch (const std::exception&) {
      throw DomainError("CSV row " + rec.at("#line") + ": bad central charge");
    }
    std::optional<long>* slots[] = {&r.svosa_odd, &r.svosa_stump, &r.svosa_even,
                                    &r.lattice_odd, &r.lattice_stump, &r.lattice_even};
    for (std::size_t i = 0; i < cols.size(); ++i)
      if (!rec.at(cols[i]).empty()) *slots[i] = parse_count(rec.at(cols[i]), rec);
    std::stringstream ts(rec.count("tentative") ? rec.at("tentative") : "");
    for (std::string t; std::getline(ts, t, ';');)
      if (!t.empty()) r.tentative.insert(t);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<NumbersRow> numbers_table() {
  auto in = open_data("numbers.csv");
  return parse_numbers_csv(in);
}

std::vector<GenusRow> parse_genera_csv(std::istream& in) {
  std::vector<GenusRow> out;
  for (auto& rec : read_csv(in, {"type", "commutant", "lattice_genus", "neighbour_pair", "rank_triple",
                                 "edges_nonloop", "edges_loop"})) {
    GenusRow r;
    r.type = rec.at("type");
    if (r.type != "I" && r.type != "IIa" && r.type != "IIb" && r.type != "III")
      throw DomainError("CSV row " + rec.at("#line") + ": unknown glueing type '" + r.type + "'");
    r.commutant = rec.at("commutant");
    r.lattice_genus = rec.at("lattice_genus");
    r.neighbour_pair = rec.at("neighbour_pair");
    std::stringstream rs(rec.at("rank_triple"));
    for (auto& x : r.ranks)
      if (!(rs >> x)) throw DomainError("CSV row " + rec.at("#line") + ": bad rank triple");
    r.edges_nonloop = parse_count(rec.at("edges_nonloop"), rec);
    r.edges_loop = parse_count(rec.at("edges_loop"), rec);
    if (rec.count("letter")) r.letter = rec.at("letter");
    if (rec.count("genus_size") && !rec.at("genus_size").empty()) r.genus_size = parse_count(rec.at("genus_size"), rec);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<GenusRow> genera_table() {
  auto in = open_data("genera.csv");
  return parse_genera_csv(in);
}

std::vector<std::string> validate_bundle() {
  std::vector<std::string> problems;
  for (const auto& name : bundled_lattice_names()) {
    try {
      auto b = bundled_lattice(name);
      if (!b.lattice.is_integral()) problems.push_back(name + ": not integral");
    } catch (const std::exception& e) {
      problems.push_back(e.what());
    }
  }
  try {
    for (const auto& [name, f] : form_dictionary()) {
      DiscriminantForm parsed = form_from_symbol(name);
      if (parsed.size() != f.size() || signature_mod8(parsed) != signature_mod8(f)) {
        problems.push_back("forms.json: " + name + " disagrees with its symbol");
        continue;
      }
      if (parsed == f) continue;
      if (f.size() > 64 || !is_isomorphic_df(parsed, f))
        problems.push_back("forms.json: " + name + " disagrees with its symbol");
    }
  } catch (const std::exception& e) {
    problems.push_back(std::string("forms.json: ") + e.what());
  }
  try {
    numbers_table();
  } catch (const std::exception& e) {
    problems.push_back(std::string("numbers.csv: ") + e.what());
  }
  try {
    static const std::regex genus_re(R"(II_\{(\d+),0\}\((.*)\))");
    for (const auto& r : genera_table()) {
      std::smatch m;
      if (!std::regex_match(r.lattice_genus, m, genus_re) || r.commutant.size() < 4) {
        problems.push_back("genera.csv: malformed genus " + r.lattice_genus);
        continue;
      }
      int n = std::stoi(m[1].str());
      std::string lat = m[2].str();
      std::string com = r.commutant.substr(2, r.commutant.size() - 3);
      int sl = lat == "1" ? 0 : signature_mod8(form_from_symbol(lat));
      int sc = com == "1" ? 0 : signature_mod8(form_from_symbol(com));
      if (sl != n % 8 || sc != (24 - n) % 8)
        problems.push_back("genera.csv: signature mismatch in row " + r.type + " " + r.letter + " " +
                           r.neighbour_pair);
    }
  } catch (const std::exception& e) {
    problems.push_back(std::string("genera.csv: ") + e.what());
  }
  try {
    mtc_table();
  } catch (const std::exception& e) {
    problems.push_back(e.what());
  }
  try {
    for (const auto& p : validate_count_tables().problems) problems.push_back("count tables: " + p);
  } catch (const std::exception& e) {
    problems.push_back(std::string("count tables: ") + e.what());
  }
  return problems;
}

}  // namespace svoa
