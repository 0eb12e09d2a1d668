#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "svoa/discform.hpp"
#include "svoa/lattice.hpp"

namespace svoa {

/// Data directory: an explicit override, else $SVOA_DATA_DIR, else the
/// directory configured at build time.
std::filesystem::path data_dir();
void set_data_dir(const std::filesystem::path& dir);

struct BundledLattice {
  std::string name;
  std::string description;
  Lattice lattice;
  GeneratorSet extra;  // automorphisms beyond the reflections
  /// Basis rows in auxiliary coordinates with inner product scale * (standard),
  /// when the file records them.
  std::optional<QMatrix> coordinates;
  Rational coordinate_scale = 1;
};

/// Lattice file format (JSON):
///   {"name", "description", "recipe", "coordinates"?, "extra_generators"?, "expect"?}
/// Recipes: {"root": "E8"}, {"file": "<bundled name>"}, {"sum": [recipe, ...]},
/// {"gram": [[...]]}, {"span": {"ambient": recipe, "scale"?: "1/8", "generators": [[...]]}},
/// {"glue": {"base": recipe, "vectors": [[...]], "even"?: true}}.
/// Entries are integers or strings "p/q". Extra generators are {"permutation": [...]}
/// or {"matrix": [[...]]} in the coordinates of the final basis.
BundledLattice load_lattice_file(const std::filesystem::path& file);
BundledLattice bundled_lattice(const std::string& name);
std::vector<std::string> bundled_lattice_names();
/// A root-lattice name (A3, D16, E8, Z24), a bundled name, or a file path.
BundledLattice resolve_lattice(const std::string& spec);

/// The extended binary Golay code as 24-bit masks, sorted.
std::vector<std::uint32_t> golay_code();
/// Leech lattice built from the Golay code in coordinates scaled by 1/sqrt(8).
Embedded leech_from_golay();

struct NamedLattice {
  std::string name;
  Lattice lattice;
};
/// The rank-24 odd unimodular lattices used for character checks.
std::vector<NamedLattice> rank24_odd_lattices();

/// Symbol dictionary from forms.json, validated against the symbol parser.
std::map<std::string, DiscriminantForm> form_dictionary();

struct NumbersRow {
  Rational c;
  std::optional<long> svosa_odd, svosa_stump, svosa_even;
  std::optional<long> lattice_odd, lattice_stump, lattice_even;
  std::set<std::string> tentative;  // columns printed as conjectural
};
std::vector<NumbersRow> parse_numbers_csv(std::istream& in);
std::vector<NumbersRow> numbers_table();

struct GenusRow {
  std::string type;  // I, IIa, IIb, III
  std::string commutant;
  std::string lattice_genus;
  std::string neighbour_pair;
  std::array<int, 3> ranks{};
  long edges_nonloop = 0;
  long edges_loop = 0;
  std::string letter;
  long genus_size = 0;
};
std::vector<GenusRow> parse_genera_csv(std::istream& in);
std::vector<GenusRow> genera_table();

/// Splits one CSV record (double quotes protect commas).
std::vector<std::string> split_csv_line(const std::string& line);

/// Loads every bundled file and runs its validator; returns the problems found.
std::vector<std::string> validate_bundle();

}  // namespace svoa
