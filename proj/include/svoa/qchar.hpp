#pragma once

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "svoa/lattice.hpp"

namespace svoa {

/// Truncated Puiseux series in q: finitely many exact coefficients at
/// exponents in (1/N)Z below an absolute cutoff prec.
class QSeries {
 public:
  QSeries() = default;
  /// Zero series known up to prec.
  explicit QSeries(Rational prec) : prec_(std::move(prec)) {}
  static QSeries constant(const Rational& c, const Rational& prec);
  static QSeries monomial(const Rational& c, const Rational& exponent, const Rational& prec);

  const Rational& prec() const { return prec_; }
  /// Least common denominator of the stored exponents (1 for the zero series).
  Integer denom() const;
  Rational coeff(const Rational& exponent) const;
  const std::map<Rational, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Lowest exponent with a nonzero coefficient; prec for the zero series.
  Rational valuation() const;

  void add_term(const Rational& exponent, const Rational& c);
  QSeries truncated(const Rational& prec) const;
  /// q -> q^s for a positive rational s.
  QSeries substituted(const Rational& s) const;
  /// Multiplication by q^e.
  QSeries shifted(const Rational& e) const;
  QSeries inverse() const;
  QSeries pow(long e) const;

  QSeries operator+(const QSeries& o) const;
  QSeries operator-(const QSeries& o) const;
  QSeries operator-() const;
  QSeries operator*(const QSeries& o) const;
  QSeries operator*(const Rational& c) const;
  /// Equal coefficients below the smaller of the two cutoffs.
  bool agrees_with(const QSeries& o) const;
  bool operator==(const QSeries& o) const { return prec_ == o.prec_ && terms_ == o.terms_; }

  /// "c * q^(p/N)" terms in increasing exponent order.
  std::string to_string() const;
  std::string to_json() const;

 private:
  std::map<Rational, Rational> terms_;
  Rational prec_ = 0;
};

struct EtaFactor {
  Rational scale;  // s in eta(s tau); 1/2, 1 or 2 in practice
  long exponent;
};

/// prod eta(s tau)^e with eta(s tau) = q^{s/24} prod (1 - q^{s n}).
QSeries eta_quotient(const std::vector<EtaFactor>& spec, const Rational& prec);

/// Sum over x in rep + L of q^{<x,x>/2}.
QSeries theta_series(const Lattice& l, const LatticeVector& rep, const Rational& prec);

/// Theta series of the cosets of an even lattice K in K', indexed like the
/// elements of discriminant_form(K). Uses an orthogonal frame of short
/// vectors of K' when one exists and direct enumeration otherwise.
std::vector<QSeries> coset_thetas(const Lattice& k, const Rational& prec);

/// Components ordered by the elements of 2_II^{+2} with weights 0, 0, 0, 1/2.
using VectorForm4 = std::array<QSeries, 4>;

bool agrees(const VectorForm4& a, const VectorForm4& b);

struct CharacterParams {
  long a = 0, b = 0, l = 0;
  bool operator==(const CharacterParams&) const = default;
  /// Integrality constraints 0 <= l <= 48, a, b >= 24 l, a + b >= 24 (l + 1).
  bool admissible() const;
};

VectorForm4 build_basis_F(const Rational& prec);
VectorForm4 build_basis_G(const Rational& prec);
VectorForm4 assemble_character(const CharacterParams& p, const Rational& prec);

/// Throws DomainError for a non-integral l or an inadmissible triple.
CharacterParams abl_from_dims(long d0, long w1, long w2);

struct CoefficientViolation {
  std::size_t component = 0;
  Rational exponent;
  Rational coeff;
};
/// First coefficient that is negative or non-integral, if any.
std::optional<CoefficientViolation> check_nonnegative_integral(const VectorForm4& ch);

struct OddLatticeCharacter {
  VectorForm4 ch;
  Lattice even_part;
  /// The two even unimodular lattices in the order of components 2 and 3.
  std::array<Lattice, 2> neighbours;
};

/// Rank-24 odd unimodular L: theta series of the K'/K cosets of K = L_ev over eta^24.
OddLatticeCharacter character_from_odd_lattice(const Lattice& l, const Rational& prec);

std::complex<double> numeric_eval(const QSeries& s, std::complex<double> tau);

/// max_i |Ch(-1/tau) - rho(S) Ch(tau)|_i with rho from the Weil representation of 2_II^{+2}.
double s_transform_residual(const VectorForm4& ch, std::complex<double> tau = {0.0, 1.0});
/// Same for T: Ch(tau + 1) against rho(T) Ch(tau).
double t_transform_residual(const VectorForm4& ch, std::complex<double> tau = {0.0, 1.0});

}  // namespace svoa
