#pragma once

#include <random>

#include "svoa/lattice.hpp"

namespace testsupport {

using namespace svoa;

/// Random unimodular matrix as a product of elementary operations.
inline ZMatrix random_unimodular(std::size_t n, std::mt19937& rng, int steps = 40) {
  ZMatrix u = ZMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    int c = coef(rng);
    for (std::size_t k = 0; k < n; ++k) u(i, k) += c * u(j, k);
    if (s % 7 == 0) u.swap_rows(i, j);
  }
  return u;
}

inline Lattice transformed(const Lattice& l, const ZMatrix& u) {
  QMatrix uq = to_rational(u);
  return Lattice(uq * l.gram() * uq.transpose(), l.name());
}

/// Gram matrix of the rows of an explicit coordinate matrix (standard inner product).
inline Lattice from_coordinates(const QMatrix& rows) {
  return Lattice(rows * rows.transpose());
}

inline Lattice d16_plus() {
  Lattice d16 = make_lattice('D', 16);
  // D16 basis rows b_i in R^16; spinor glue (1/2,...,1/2) in basis coordinates.
  QMatrix b(16, 16);
  for (std::size_t i = 0; i + 1 < 16; ++i) {
    b(i, i) = 1;
    b(i, i + 1) = -1;
  }
  b(15, 14) = 1;
  b(15, 15) = 1;
  QVector s(16, Rational(1, 2));
  QVector c = vec_mat(s, inverse(b));
  return glue_extension(d16, {c}, true).lattice;
}

}  // namespace testsupport
