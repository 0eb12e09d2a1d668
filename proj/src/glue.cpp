#include "svoa/glue.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace svoa {

using json = nlohmann::json;

std::string to_string(GlueType t) {
  switch (t) {
    case GlueType::I: return "I";
    case GlueType::IIa: return "IIa";
    case GlueType::IIb: return "IIb";
    case GlueType::III: return "III";
  }
  return "?";
}

DiscriminantForm trivial_form() { return DiscriminantForm({}, QMatrix(0, 0)); }

GlueInput glue_input_from_lattice(const Lattice& k, const DiscriminantForm& a_w,
                                  const std::vector<DFElement>& a_gens, const std::vector<DFElement>& tau) {
  if (!k.is_even()) throw DomainError("glue input needs an even lattice K");
  GlueInput in;
  in.k_disc = discriminant_form(k);
  in.k = k;
  in.a_k = in.k_disc->form;
  in.a_w = a_w;
  in.a = generate_subgroup(in.a_k, a_gens);
  in.tau = tau;
  return in;
}

namespace {

DFElement concat(const DFElement& w, const DFElement& k) {
  DFElement out = w;
  out.insert(out.end(), k.begin(), k.end());
  return out;
}

DFElement w_part(const GlueInput& in, const DFElement& x) {
  return DFElement(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(in.a_w.generators()));
}

DFElement k_part(const GlueInput& in, const DFElement& x) {
  return DFElement(x.begin() + static_cast<std::ptrdiff_t>(in.a_w.generators()), x.end());
}

bool is_zero(const DFElement& x) {
  return std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; });
}

/// The unique nonzero element of an order-2 subgroup.
DFElement nonzero_element(const DFSubgroup& s) {
  for (const auto& x : s.elements)
    if (!is_zero(x)) return x;
  throw DomainError("expected a nontrivial subgroup");
}

}  // namespace

GlueResult glueing_type(const GlueInput& in) {
  if (in.tau.size() != in.a.gens.size()) throw DomainError("tau needs one image per generator of A");
  for (const auto& g : in.a.gens)
    if (g.size() != in.a_k.generators()) throw DomainError("generator of A has the wrong length");
  for (const auto& t : in.tau)
    if (t.size() != in.a_w.generators()) throw DomainError("image of tau has the wrong length");

  GlueResult res;
  res.input = in;
  res.total = direct_sum(in.a_w, in.a_k);
  std::vector<DFElement> igens;
  for (std::size_t j = 0; j < in.a.gens.size(); ++j) igens.push_back(concat(in.tau[j], in.a.gens[j]));
  res.i = generate_subgroup(res.total, igens);
  res.i.gens = igens;
  if (res.i.size() != in.a.size()) throw DomainError("tau is not well defined on A");
  std::vector<DFElement> image;
  for (const auto& x : res.i.elements) {
    if (res.total.q(x) != 0) throw DomainError("tau is not an anti-isometry");
    image.push_back(w_part(in, x));
  }
  DFSubgroup a_prime = generate_subgroup(in.a_w, image);
  if (a_prime.size() != in.a.size()) throw DomainError("tau is not injective");

  res.index_w = in.a_w.size() / static_cast<std::int64_t>(a_prime.size());
  res.index_k = in.a_k.size() / static_cast<std::int64_t>(in.a.size());
  if (res.index_w * res.index_k != 4)
    throw DomainError("index product [A_W:A'][A_K:A] is " + std::to_string(res.index_w * res.index_k) + ", not 4");

  res.quotient = quotient_form(res.total, res.i);
  static const DiscriminantForm hyperbolic = form_from_symbol("2_II^{+2}");
  if (res.quotient.form.size() != 4 || !is_isomorphic_df(res.quotient.form, hyperbolic))
    throw DomainError("I^perp/I is not isometric to 2_II^{+2}");

  // One representative per nonzero class, the first in index order.
  std::vector<DFElement> reps;
  std::vector<DFElement> seen;
  for (std::size_t n = 0; n < res.quotient.perp.elements.size(); ++n) {
    const DFElement& cls = res.quotient.classes_of_perp[n];
    if (is_zero(cls) || std::find(seen.begin(), seen.end(), cls) != seen.end()) continue;
    seen.push_back(cls);
    reps.push_back(res.quotient.perp.elements[n]);
  }
  std::vector<DFElement> null_reps;
  DFElement half_rep;
  for (const auto& r : reps) {
    if (res.total.q(r) == 0)
      null_reps.push_back(r);
    else
      half_rep = r;
  }

  if (res.index_k == 4) {
    res.type = GlueType::I;
  } else if (res.index_w == 4) {
    res.type = GlueType::III;
  } else {
    DFElement b = nonzero_element(orthogonal_complement(in.a_k, in.a));
    DFElement bp = nonzero_element(orthogonal_complement(in.a_w, a_prime));
    if (!res.i.contains(res.total, concat(bp, b))) throw DomainError("(b', b) is not in I");
    res.b = b;
    res.b_prime = bp;
    res.type = in.a_k.q(b) == 0 ? GlueType::IIb : GlueType::IIa;
    if (res.type == GlueType::IIb) {
      // gamma_1 is the class of (0, b).
      DFElement zb = concat(in.a_w.zero(), b);
      DFElement cls = res.quotient.class_of(zb);
      std::stable_sort(null_reps.begin(), null_reps.end(), [&](const DFElement& x, const DFElement&) {
        return res.quotient.class_of(x) == cls;
      });
    }
  }
  res.gammas = {null_reps.at(0), null_reps.at(1), half_rep};
  for (std::size_t j = 0; j < 3; ++j) res.gamma_norms[j] = res.total.q(res.gammas[j]);
  return res;
}

ExtensionTriple three_extensions(const GlueResult& res) {
  if (res.quotient.form.size() != 4) throw DomainError("glue result has no 2_II^{+2} quotient");
  const GlueInput& in = res.input;
  auto make = [&](const DFElement& gamma) {
    GlueExtension e;
    e.gamma = gamma;
    e.norm = res.total.q(gamma);
    e.even = e.norm == 0;
    std::vector<DFElement> gens = res.i.gens;
    gens.push_back(gamma);
    e.subgroup = generate_subgroup(res.total, gens);
    if (in.k && in.k_disc) {
      for (const auto& x : res.i.elements) {
        DFElement y = res.total.add(gamma, x);
        if (!is_zero(w_part(in, y))) continue;
        LatticeVector lift = in.k_disc->lift(k_part(in, y));
        e.lattice = glue_extension(*in.k, {lift}, e.even);
        break;
      }
    }
    return e;
  };
  ExtensionTriple t;
  t.even[0] = make(res.gammas[0]);
  t.even[1] = make(res.gammas[1]);
  t.odd = make(res.gammas[2]);
  return t;
}

// ---- pointed modular categories -----------------------------------------------

std::uint64_t mtc_checksum(const std::vector<MTCRow>& rows) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ull;
    }
  };
  for (const auto& r : rows) {
    std::string w;
    for (std::size_t i = 0; i < r.weights.size(); ++i) w += (i ? "," : "") + r.weights[i];
    feed(std::to_string(r.c_times_2) + "|" + r.category + "|" + r.fusion + "|" + w + "\n");
  }
  return h;
}

namespace {

Rational weight_value(std::string w) {
  w.erase(std::remove_if(w.begin(), w.end(), [](char c) { return c == '[' || c == ']' || c == '(' || c == ')'; }),
          w.end());
  return parse_rational(w);
}

void check_row(const MTCRow& r) {
  const std::string where = "mtc16.json row " + std::to_string(r.c_times_2) + ": ";
  if (r.c * 2 != r.c_times_2) throw DomainError(where + "c does not match c_times_2");
  const bool integral = r.c_times_2 % 2 == 0;
  const std::string fusion = !integral ? "Ising" : (r.c_times_2 / 2) % 2 == 0 ? "Z2xZ2" : "Z4";
  if (r.fusion != fusion) throw DomainError(where + "fusion should be " + fusion);
  std::vector<std::string> bracketed;
  for (const auto& w : r.weights)
    if (!w.empty() && w.front() == '[') bracketed.push_back(w);
  if (r.weights.size() < 3 || r.weights[0] != "[0]" || bracketed != std::vector<std::string>{"[0]", "[1/2]"})
    throw DomainError(where + "weights must contain [0] first and [1/2]");
  if (integral) {
    if (!r.form) throw DomainError(where + "pointed row without a form");
    DiscriminantForm f = form_from_symbol(*r.form);
    if (f.size() != 4 || r.weights.size() != 4) throw DomainError(where + "pointed rows have four objects");
    if (signature_mod8(f) != (r.c_times_2 / 2) % 8) throw DomainError(where + "signature differs from c");
    std::vector<Rational> got, want;
    for (const auto& w : r.weights) got.push_back(mod_one(weight_value(w)));
    for (const auto& x : f.elements()) want.push_back(f.q(x));
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    if (got != want) throw DomainError(where + "weights differ from the values of " + *r.form);
  } else {
    if (r.weights.size() != 3) throw DomainError(where + "Ising-type rows have three objects");
    if (weight_value(r.weights[2]) != r.c / 8) throw DomainError(where + "twisted weight should be c/8");
  }
}

}  // namespace

std::vector<MTCRow> mtc_table() {
  auto path = data_dir() / "mtc16.json";
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open " + path.string());
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw DomainError(path.string() + ": " + e.what());
  }
  std::vector<MTCRow> rows;
  try {
    for (const auto& e : j.at("rows")) {
      MTCRow r;
      r.c_times_2 = e.at("c_times_2").get<int>();
      r.c = parse_rational(e.at("c").get<std::string>());
      r.category = e.at("category").get<std::string>();
      if (!e.at("form").is_null()) r.form = e.at("form").get<std::string>();
      r.fusion = e.at("fusion").get<std::string>();
      r.weights = e.at("weights").get<std::vector<std::string>>();
      rows.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw DomainError(path.string() + ": " + e.what());
  }
  if (rows.size() != 16) throw DomainError("mtc16.json: expected 16 rows");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].c_times_2 != static_cast<int>(i)) throw DomainError("mtc16.json: rows out of order");
    check_row(rows[i]);
  }
  std::ostringstream want;
  want << std::hex << mtc_checksum(rows);
  if (j.value("checksum", std::string()) != want.str())
    throw DomainError("mtc16.json: checksum mismatch (computed " + want.str() + ")");
  return rows;
}

MTCRow mtc_table_row(int c_times_2_mod_16) {
  if (c_times_2_mod_16 < 0 || c_times_2_mod_16 > 15) throw DomainError("c_times_2 must lie in 0..15");
  static const std::vector<MTCRow> rows = mtc_table();
  return rows[static_cast<std::size_t>(c_times_2_mod_16)];
}

// ---- count tables --------------------------------------------------------------

CountReport validate_count_tables(const std::vector<GenusRow>& rows, const std::vector<NumbersRow>& numbers) {
  if (rows.empty()) throw DomainError("count table is empty");
  CountReport rep;
  for (const auto& r : rows) {
    rep.total += r.edges_nonloop + r.edges_loop;
    rep.per_type[r.type] += r.edges_nonloop + r.edges_loop;
    if (r.type == "I" && r.letter == "A") rep.row_a_total += r.edges_nonloop + r.edges_loop;
  }
  for (const auto& n : numbers)
    if (n.c == 24 && n.lattice_odd) rep.numbers_rank24_odd = *n.lattice_odd;
  if (rep.total != 969) rep.problems.push_back("total " + std::to_string(rep.total) + " != 969");
  const std::map<std::string, long> want = {{"I", 506}, {"IIa", 167}, {"IIb", 171}, {"III", 125}};
  for (const auto& [t, v] : want)
    if (rep.per_type[t] != v)
      rep.problems.push_back("type " + t + " total " + std::to_string(rep.per_type[t]) + " != " + std::to_string(v));
  if (rep.row_a_total != 273) rep.problems.push_back("row A total " + std::to_string(rep.row_a_total) + " != 273");
  if (rep.numbers_rank24_odd != rep.row_a_total)
    rep.problems.push_back("rank-24 odd lattice count " + std::to_string(rep.numbers_rank24_odd) +
                           " != row A total " + std::to_string(rep.row_a_total));
  return rep;
}

CountReport validate_count_tables() { return validate_count_tables(genera_table(), numbers_table()); }

}  // namespace svoa
