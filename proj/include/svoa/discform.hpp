#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "svoa/lattice.hpp"

namespace svoa {

using DFElement = std::vector<std::int64_t>;

/// Finite quadratic module: Z/d1 x ... x Z/dk with a Q/Z-valued form.
/// qgram(i,i) = q(g_i) and qgram(i,j) = b(g_i, g_j) for i != j, all mod 1.
class DiscriminantForm {
 public:
  DiscriminantForm() = default;
  /// Validates orders, symmetry and nondegeneracy.
  DiscriminantForm(std::vector<std::int64_t> orders, QMatrix qgram);

  const std::vector<std::int64_t>& orders() const { return orders_; }
  const QMatrix& qgram() const { return qgram_; }
  std::size_t generators() const { return orders_.size(); }
  std::int64_t size() const;

  Rational q(const DFElement& x) const;
  Rational b(const DFElement& x, const DFElement& y) const;
  DFElement add(const DFElement& x, const DFElement& y) const;
  DFElement neg(const DFElement& x) const;
  DFElement scale(const DFElement& x, std::int64_t k) const;
  DFElement zero() const { return DFElement(orders_.size(), 0); }
  std::int64_t order_of(const DFElement& x) const;

  /// Mixed-radix lexicographic position (first generator most significant).
  std::int64_t index_of(const DFElement& x) const;
  DFElement element(std::int64_t index) const;
  std::vector<DFElement> elements() const;

  bool operator==(const DiscriminantForm& o) const { return orders_ == o.orders_ && qgram_ == o.qgram_; }

 private:
  std::vector<std::int64_t> orders_;
  QMatrix qgram_;
};

struct DFSubgroup {
  std::vector<DFElement> gens;
  std::vector<DFElement> elements;  // sorted by index

  std::size_t size() const { return elements.size(); }
  bool contains(const DiscriminantForm& d, const DFElement& x) const;
};

DFSubgroup generate_subgroup(const DiscriminantForm& d, const std::vector<DFElement>& gens);

/// Group homomorphism given by images of the source generators; anti
/// marks q_target(f x) = -q_source(x).
struct FormMap {
  std::vector<DFElement> images;
  bool anti = false;
  DFElement apply(const DiscriminantForm& target, const DFElement& x) const;
};

struct DiscResult {
  DiscriminantForm form;
  std::vector<LatticeVector> lifts;  // generator lifts in L-coordinates (elements of L')
  /// Class of a dual-lattice vector (L-coordinates).
  DFElement class_of(const Lattice& l, const LatticeVector& v) const;
  LatticeVector lift(const DFElement& x) const;
  QMatrix to_class;  // maps L-coords of L' vectors to generator coordinates (rational)
};

DiscResult discriminant_form(const Lattice& l);

int signature_mod8(const DiscriminantForm& d);

/// Brute-force isomorphism search; anti = true asks for an anti-isometry.
std::optional<FormMap> is_isomorphic_df(const DiscriminantForm& a, const DiscriminantForm& b,
                                        bool anti = false, std::int64_t bound = 1 << 16);

DFSubgroup orthogonal_complement(const DiscriminantForm& d, const DFSubgroup& s);
std::vector<DFSubgroup> all_subgroups(const DiscriminantForm& d, std::int64_t bound = 1 << 16);
std::vector<DFSubgroup> isotropic_subgroups(const DiscriminantForm& d, std::int64_t bound = 1 << 16);

struct QuotientResult {
  DiscriminantForm form;
  /// Representatives in D of the generators of I^perp / I.
  std::vector<DFElement> lifts;
  /// Class in the quotient of an element of I^perp.
  std::vector<DFElement> classes_of_perp;  // parallel to perp.elements
  DFSubgroup perp;
  DFElement class_of(const DFElement& x) const;
};
QuotientResult quotient_form(const DiscriminantForm& d, const DFSubgroup& iso);

DiscriminantForm direct_sum(const DiscriminantForm& a, const DiscriminantForm& b);
DiscriminantForm negated(const DiscriminantForm& d);

/// Entry e^{2 pi i angle} * sqrt(magnitude_sq) with angle in [0,1).
struct Phase {
  Rational angle;
  Rational magnitude_sq;
  std::complex<double> value() const;
  bool operator==(const Phase&) const = default;
};

struct WeilMatrices {
  std::vector<std::vector<Phase>> s;
  std::vector<std::vector<Phase>> t;
  std::vector<DFElement> basis;  // ordering of the rows
};
/// Rows indexed by elements in the given order (default: mixed radix).
WeilMatrices weil_matrices(const DiscriminantForm& d, std::vector<DFElement> order = {});

/// Named forms from the bundled symbol dictionary (built in, also loadable).
DiscriminantForm form_from_symbol(const std::string& symbol);
std::vector<std::string> known_symbols();

}  // namespace svoa
