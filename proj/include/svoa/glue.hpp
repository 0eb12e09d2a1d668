#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "svoa/bundle.hpp"
#include "svoa/discform.hpp"
#include "svoa/lattice.hpp"

namespace svoa {

enum class GlueType { I, IIa, IIb, III };
std::string to_string(GlueType t);

/// Glue data for W (x) V_K: A <= A_K and tau : A -> A_W, an anti-isometry
/// onto its image A'. tau is given by the images of a.gens.
struct GlueInput {
  DiscriminantForm a_w;
  DiscriminantForm a_k;
  DFSubgroup a;
  std::vector<DFElement> tau;
  /// Set by glue_input_from_lattice; a_k is then discriminant_form(*k).form.
  std::optional<Lattice> k;
  std::optional<DiscResult> k_disc;
};

/// Trivial discriminant form (the group of order 1).
DiscriminantForm trivial_form();

/// Lattice-backed input: A_K = disc(K), A <= A_K given by generators.
GlueInput glue_input_from_lattice(const Lattice& k, const DiscriminantForm& a_w = trivial_form(),
                                  const std::vector<DFElement>& a_gens = {},
                                  const std::vector<DFElement>& tau = {});

struct GlueResult {
  GlueType type = GlueType::I;
  std::int64_t index_w = 1;  // [A_W : A']
  std::int64_t index_k = 1;  // [A_K : A]
  DiscriminantForm total;    // A_W x A_K, W coordinates first
  DFSubgroup i;              // {(tau x, x) : x in A}
  QuotientResult quotient;   // I^perp / I
  /// Representatives in `total` of the nonzero classes of I^perp / I.
  /// gammas[2] has norm 1/2; in type IIb gammas[0] is the class of (0, b).
  std::array<DFElement, 3> gammas;
  std::array<Rational, 3> gamma_norms;
  /// Type II: A^perp = {0, b} in A_K and A'^perp = {0, b'} in A_W.
  std::optional<DFElement> b, b_prime;
  GlueInput input;
};

/// Throws DomainError unless tau is an injective anti-isometry, the index
/// product is 4 and I^perp / I is isometric to 2_II^{+2}.
GlueResult glueing_type(const GlueInput& in);

struct GlueExtension {
  DFElement gamma;
  Rational norm;
  bool even = true;     // norm 0: a VOA extension; norm 1/2: the super extension
  DFSubgroup subgroup;  // I + {0, gamma}
  /// Lattice-backed inputs when gamma + I meets {0} x A_K: K together with
  /// the lifted coset.
  std::optional<Embedded> lattice;
};

struct ExtensionTriple {
  std::array<GlueExtension, 2> even;  // W^(1), W^(2); unordered
  GlueExtension odd;
};

ExtensionTriple three_extensions(const GlueResult& res);

struct MTCRow {
  int c_times_2 = 0;
  Rational c;
  std::string category;
  std::optional<std::string> form;
  std::string fusion;  // Z2xZ2, Z4 or Ising
  std::vector<std::string> weights;
};

/// 64-bit FNV-1a over "c_times_2|category|fusion|w1,w2,...\n" for all rows.
std::uint64_t mtc_checksum(const std::vector<MTCRow>& rows);
/// Loads and validates mtc16.json (row shape, checksum, weights against the forms).
std::vector<MTCRow> mtc_table();
MTCRow mtc_table_row(int c_times_2_mod_16);

struct CountReport {
  long total = 0;
  std::map<std::string, long> per_type;
  long row_a_total = 0;
  long numbers_rank24_odd = 0;
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

/// Sums the count tables and compares with the expected totals.
CountReport validate_count_tables(const std::vector<GenusRow>& rows, const std::vector<NumbersRow>& numbers);
CountReport validate_count_tables();

}  // namespace svoa
