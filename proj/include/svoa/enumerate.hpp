#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "svoa/numeric.hpp"

namespace svoa {

/// Fincke-Pohst enumeration of lattice cosets in an LLL-reduced basis.
///
/// Internally the Gram matrix is scaled to integers (factor `den`) and a coset
/// rep + L is written as z / R with z integral and z = R*rep (mod R). Visitors
/// receive z (in reduced coordinates) and the exact integer z^T A z.
class Enumerator {
 public:
  explicit Enumerator(const QMatrix& gram);

  struct Coset {
    std::int64_t scale = 1;             // R
    std::vector<std::int64_t> offset;   // R*rep in reduced coordinates, reduced mod R
    bool symmetric = true;              // rep + L = -rep + L
  };

  std::size_t rank() const { return n_; }
  std::int64_t denominator() const { return den_; }

  Coset prepare(const QVector& rep) const;
  /// floor(max_norm * den * R^2).
  std::int64_t scaled_bound(const Rational& max_norm, const Coset& c) const;
  Rational norm_value(std::int64_t scaled, const Coset& c) const;
  /// Original coordinates of the vector z / R.
  QVector to_original(const std::int64_t* z, const Coset& c) const;
  /// Original integer coordinates (R must be 1).
  void to_original_int(const std::int64_t* z, std::int64_t* out) const;

  /// Visit every z in the coset with z^T A z <= bound. With half = true and a
  /// symmetric coset only one of each pair +-z is visited (the zero vector
  /// once).
  template <class Visit>
  void run(const Coset& c, std::int64_t bound, bool half, Visit&& visit) const {
    if (bound < 0) return;
    if (n_ == 0) {
      std::int64_t z0 = 0;
      visit(&z0, std::int64_t{0});
      return;
    }
    std::vector<std::int64_t> z(n_, 0);
    const double top = static_cast<double>(bound) * (1.0 + 1e-9) + 1e-6;
    rec(static_cast<int>(n_) - 1, top, 0, half && c.symmetric, c, bound, z, visit);
  }

 private:
  template <class Visit>
  void rec(int j, double rem, std::int64_t partial, bool zero_above, const Coset& c,
           std::int64_t bound, std::vector<std::int64_t>& z, Visit& visit) const {
    const std::size_t n = n_;
    double center = 0;
    std::int64_t s = 0;
    for (std::size_t i = j + 1; i < n; ++i) {
      center -= q_[j * n + i] * static_cast<double>(z[i]);
      s += a_[j * n + i] * z[i];
    }
    const double qjj = q_[j * n + j];
    const double radius = std::sqrt(rem > 0 ? rem / qjj : 0.0) + 1e-7;
    const std::int64_t R = c.scale, off = c.offset[j];
    auto lo = static_cast<std::int64_t>(std::ceil(center - radius));
    auto hi = static_cast<std::int64_t>(std::floor(center + radius));
    if (zero_above && lo < 0) lo = 0;
    // First value >= lo congruent to off modulo R.
    std::int64_t m = ((lo - off) % R + R) % R;
    std::int64_t start = m == 0 ? lo : lo + (R - m);
    const std::int64_t ajj = a_[j * n + j];
    for (std::int64_t v = start; v <= hi; v += R) {
      const double d = static_cast<double>(v) - center;
      const double r2 = rem - qjj * d * d;
      if (r2 < 0) continue;
      z[j] = v;
      const std::int64_t p = partial + v * (ajj * v + 2 * s);
      if (j == 0) {
        if (p <= bound) visit(z.data(), p);
      } else {
        rec(j - 1, r2, p, zero_above && v == 0, c, bound, z, visit);
      }
    }
    z[j] = 0;
  }

  std::size_t n_ = 0;
  std::int64_t den_ = 1;
  std::vector<std::int64_t> a_;   // reduced integer Gram (scaled by den)
  std::vector<double> q_;         // Fincke-Pohst quadratic form coefficients
  std::vector<std::int64_t> t_;   // rows: reduced basis in original coordinates
  QMatrix t_inv_;                 // original -> reduced coordinates
};

}  // namespace svoa
