#pragma once

// Seeded random generators for property tests. Every generator takes the
// engine explicitly so a failing case can be replayed from its seed.

#include <cstdint>
#include <random>
#include <vector>

#include "qs/intmat.hpp"
#include "qs/lattice.hpp"

namespace qs::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline IntMatrix random_matrix(Rng& rng, std::size_t d, long bound) {
  std::vector<Integer> e(d * d);
  for (auto& x : e) x = uniform(rng, -bound, bound);
  return IntMatrix(d, e);
}

inline IntMatrix random_nonsingular(Rng& rng, std::size_t d, long bound) {
  for (;;) {
    IntMatrix m = random_matrix(rng, d, bound);
    if (det(m) != 0) return m;
  }
}

/// Product of random elementary operations and sign flips; |det| = 1.
inline IntMatrix random_unimodular(Rng& rng, std::size_t d, int steps = 6, long bound = 2) {
  IntMatrix m = IntMatrix::identity(d);
  for (int s = 0; s < steps; ++s) {
    if (d == 1) {
      if (uniform(rng, 0, 1)) m = Integer(-1) * m;
      continue;
    }
    const std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(d) - 1));
    std::size_t j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(d) - 2));
    if (j >= i) ++j;
    IntMatrix e = IntMatrix::identity(d);
    switch (uniform(rng, 0, 2)) {
      case 0: e(i, j) = uniform(rng, -bound, bound); break;
      case 1: e(i, i) = -1; break;
      default:
        e(i, i) = 0;
        e(j, j) = 0;
        e(i, j) = 1;
        e(j, i) = 1;
    }
    m = uniform(rng, 0, 1) ? m * e : e * m;
  }
  return m;
}

inline IntMatrix random_upper_triangular(Rng& rng, std::size_t d, long bound, bool nonsingular = true) {
  for (;;) {
    IntMatrix m(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) m(i, j) = uniform(rng, -bound, bound);
    if (!nonsingular || det(m) != 0) return m;
  }
}

/// A random rational lattice between Z^d and Q^d built from kernels and joins.
inline RationalLattice random_lattice(Rng& rng, std::size_t d, long bound = 4) {
  RationalLattice l = RationalLattice::from_kernel(random_nonsingular(rng, d, bound));
  if (uniform(rng, 0, 1)) l = join(l, RationalLattice::from_kernel(random_nonsingular(rng, d, bound)));
  if (uniform(rng, 0, 2) == 0) l = preimage(random_nonsingular(rng, d, 2), l);
  return l;
}

}  // namespace qs::testing
