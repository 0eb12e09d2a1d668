#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "svoa/numeric.hpp"

namespace svoa {

/// Raised when an operation's mathematical preconditions are violated.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Positive-definite lattice given by a rational Gram matrix.
class Lattice {
 public:
  Lattice() = default;
  /// Throws DomainError unless gram is symmetric positive definite.
  explicit Lattice(QMatrix gram, std::string name = {});

  const QMatrix& gram() const { return gram_; }
  std::size_t rank() const { return gram_.rows(); }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  Rational det() const;
  bool is_integral() const;
  bool is_even() const;
  bool is_unimodular() const { return is_integral() && det() == 1; }

  Rational inner(const QVector& a, const QVector& b) const { return bilinear(gram_, a, b); }
  Rational norm(const QVector& v) const { return bilinear(gram_, v, v); }

 private:
  QMatrix gram_;
  std::string name_;
};

using LatticeVector = QVector;

/// Linear map U with U^T G_target U = G_source; column j is the image of the
/// j-th source basis vector in target coordinates.
struct Isometry {
  QMatrix matrix;

  QVector apply(const QVector& v) const { return mat_vec(matrix, v); }
  static Isometry identity(std::size_t n) { return {QMatrix::identity(n)}; }
  bool verify(const Lattice& source, const Lattice& target) const;
};

using GeneratorSet = std::vector<Isometry>;

/// A lattice together with its basis expressed (row-wise) in the
/// coordinates of an ambient lattice.
struct Embedded {
  Lattice lattice;
  QMatrix basis;

  /// Coordinates in the ambient basis of a vector given in lattice coordinates.
  QVector to_ambient(const QVector& v) const { return vec_mat(v, basis); }
};

struct RootComponent {
  char series;  // 'A', 'D' or 'E'
  int rank;
  bool operator==(const RootComponent&) const = default;
  auto operator<=>(const RootComponent&) const = default;
};

struct RootSystemDesc {
  std::vector<RootComponent> components;  // sorted
  std::size_t root_count = 0;

  std::string name() const;
  bool operator==(const RootSystemDesc&) const = default;
};

std::size_t root_count_of(const RootComponent& c);

// ---- constructors -----------------------------------------------------------

Lattice make_lattice(char kind, int rank);
Lattice rescale(const Lattice& l, const Integer& m);
Lattice direct_sum(const Lattice& a, const Lattice& b);

struct DualResult {
  Lattice dual;
  QMatrix basis;  // dual basis rows in coordinates of the original lattice
};
DualResult dual_lattice(const Lattice& l);

/// Lattice spanned by the rows of gens (ambient coordinates), LLL reduced.
Embedded span_of(const Lattice& ambient, const QMatrix& gens);

struct EvenSublattice {
  Embedded sublattice;
  LatticeVector h;  // element of L outside L_ev
};
EvenSublattice even_sublattice(const Lattice& l);

/// L + sum Z g over the glue vectors (coordinates in L), LLL reduced.
Embedded glue_extension(const Lattice& l, const std::vector<LatticeVector>& glue,
                        bool require_even = false);

/// {x in L : <x, v> = 0 for all rows v of vs}.
Embedded orthogonal_complement(const Lattice& l, const QMatrix& vs);

// ---- enumeration ------------------------------------------------------------

/// Nonzero vectors with norm <= max_norm, one per sign pair (first nonzero
/// coordinate positive), sorted by (norm, coordinates).
std::vector<LatticeVector> short_vectors(const Lattice& l, const Rational& max_norm);
/// All x in rep + L with norm <= max_norm, sorted by (norm, coordinates).
std::vector<LatticeVector> coset_short_vectors(const Lattice& l, const LatticeVector& rep,
                                               const Rational& max_norm);
/// Number of vectors of each norm value <= max_norm in rep + L (zero included).
std::vector<std::pair<Rational, std::uint64_t>> norm_counts(const Lattice& l,
                                                            const Rational& max_norm,
                                                            const LatticeVector& rep = {});
Rational minimum_norm(const Lattice& l);

// ---- structure --------------------------------------------------------------

RootSystemDesc root_system(const Lattice& l);

struct UnitSplit {
  std::size_t l = 0;
  Embedded stump;
};
UnitSplit split_unit_vectors(const Lattice& lat);

/// Reflections in the roots (one per sign pair) together with the supplied
/// extra generators, deduplicated.
GeneratorSet automorphism_generators(const Lattice& l, const GeneratorSet& extra = {});
Isometry reflection(const Lattice& l, const LatticeVector& root);

/// {x in L : <x, h> integral}.
Embedded fixed_sublattice_vector(const Lattice& l, const LatticeVector& h);

struct FixedCoinvariant {
  Embedded fixed;
  Embedded coinvariant;
};
FixedCoinvariant fixed_and_coinvariant(const Lattice& l, const Isometry& nu);

// ---- isometry ---------------------------------------------------------------

struct Fingerprint {
  std::size_t rank = 0;
  Rational det;
  std::vector<std::pair<Rational, std::uint64_t>> counts;  // norms <= 4
  RootSystemDesc roots;
  bool operator==(const Fingerprint&) const = default;
};
Fingerprint fingerprint(const Lattice& l);

std::optional<Isometry> is_isometric(const Lattice& a, const Lattice& b);
std::optional<Isometry> is_isometric(const Lattice& a, const Lattice& b, const Fingerprint& fa,
                                     const Fingerprint& fb);

/// Exact LLL reduction (delta = 3/4) of a Gram matrix; returns T with
/// rows the reduced basis in old coordinates.
ZMatrix lll_transform(const QMatrix& gram);
Embedded lll_reduce(const Lattice& l);

/// Name following the conventions for even lattices (root system with glue
/// marks) and "stump+Z^l" for odd ones.
std::string describe_lattice(const Lattice& l);

}  // namespace svoa
