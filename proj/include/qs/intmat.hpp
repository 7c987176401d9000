#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace qs {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Square matrix of arbitrary-precision integers, stored row-major.
///
/// The dimension is fixed at construction. Row vectors act on the right
/// (`v * M`) when a matrix is used as a lattice basis; `apply` is the usual
/// column action `M v` used for torus endomorphisms.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t dim);
  IntMatrix(std::size_t dim, std::vector<Integer> entries);

  static IntMatrix identity(std::size_t dim);
  static IntMatrix scalar(std::size_t dim, const Integer& value);
  static IntMatrix diagonal(const IntVector& diag);
  /// Throws DimensionMismatch unless `rows` is square and non-empty.
  static IntMatrix from_rows(const std::vector<IntVector>& rows);

  std::size_t dim() const noexcept { return dim_; }

  const Integer& operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
  Integer& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }

  IntVector row(std::size_t r) const;
  std::vector<IntVector> rows() const;

  IntMatrix transpose() const;
  IntVector apply(const IntVector& v) const;

  bool is_upper_triangular() const;
  bool is_lower_triangular() const;
  bool is_diagonal() const;
  bool is_identity() const;
  /// True iff the matrix equals s·I for some integer s.
  bool is_scalar() const;

  std::string to_string() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const Integer& s, const IntMatrix& a);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a);

 private:
  std::size_t dim_ = 0;
  std::vector<Integer> entries_;
};

/// Row vector times matrix.
IntVector operator*(const IntVector& v, const IntMatrix& m);

Integer det(const IntMatrix& m);
IntMatrix adjugate(const IntMatrix& m);
bool is_unimodular(const IntMatrix& m);

/// Row-style Hermite normal form: h = u·m, h upper triangular with positive
/// pivots and 0 <= h(i,j) < h(j,j) above each pivot. Throws SingularMatrix.
struct HermiteForm {
  IntMatrix h;
  IntMatrix u;
};
HermiteForm hnf(const IntMatrix& m);

/// m = u·d·v with u, v unimodular and d = diag(d1, ..., dn), d1 | d2 | ... | dn, di > 0.
struct SmithDecomposition {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
};
SmithDecomposition snf(const IntMatrix& m);

/// Returns c in [0, a/k) with (b/k)·c ≡ 1 (mod a/k), k = gcd(a, b).
/// When a/k = 1 every residue works and 0 is returned. Requires a > 0.
Integer mod_inverse_reduced(const Integer& b, const Integer& a);

/// Canonical HNF basis (dim×dim, upper triangular) of the row lattice spanned
/// by `rows`. `modulus` must be a positive integer with modulus·Z^dim contained
/// in that lattice; it bounds intermediate entries.
IntMatrix hermite_basis(const std::vector<IntVector>& rows, std::size_t dim,
                        const Integer& modulus);

/// Floor division for integers of either sign.
Integer floor_div(const Integer& a, const Integer& b);

std::string to_string(const IntVector& v);

}  // namespace qs
