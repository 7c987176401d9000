#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "qs/intmat.hpp"

namespace qs::poly {

/// Coefficients from the constant term upward; trailing zeros are trimmed.
using IntPoly = std::vector<Integer>;
using RatPoly = std::vector<mpq_class>;

/// Monic characteristic polynomial det(x·I − m), by Faddeev–LeVerrier.
IntPoly charpoly(const IntMatrix& m);

/// True iff every complex root of `p` has modulus < 1 (exact Schur–Cohn recursion).
/// A nonzero constant has no roots and passes.
bool roots_inside_unit_disk(const IntPoly& p);

/// True iff `p` has a root, and every root has modulus > 1.
bool roots_outside_unit_disk(const IntPoly& p);

/// Searches for a monic integer polynomial u with u(0) = ±1 and deg u >= 1
/// dividing `p` in Q[x]. Returns the one of least degree, or nullopt when no
/// such divisor exists. The answer is exact in both directions.
std::optional<IntPoly> find_unit_factor(const RatPoly& p);

Integer evaluate(const IntPoly& p, const Integer& x);
RatPoly to_rational(const IntPoly& p);
std::string to_string(const IntPoly& p);

}  // namespace qs::poly
