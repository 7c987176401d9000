#pragma once

#include <cstddef>
#include <optional>

#include "qs/intmat.hpp"

namespace qs {

/// Full-rank integer sublattice M ⊆ Z^d in canonical row-HNF form.
class IntegerSublattice {
 public:
  IntegerSublattice() = default;

  static IntegerSublattice whole(std::size_t dim);
  /// Lattice spanned by `rows`; throws SingularMatrix if they do not span Q^d.
  static IntegerSublattice from_rows(const std::vector<IntVector>& rows, std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  const IntMatrix& basis() const noexcept { return basis_; }
  /// [Z^d : M].
  Integer index() const;
  bool contains(const IntVector& v) const;
  /// Shortest nonzero vector in the Euclidean norm: exact LLL reduction, then
  /// Fincke–Pohst enumeration. `node_budget` bounds the enumeration; the best
  /// vector found so far is returned when it runs out.
  IntVector shortest_vector(std::size_t node_budget = 2'000'000) const;

  friend bool operator==(const IntegerSublattice&, const IntegerSublattice&) = default;

 private:
  IntegerSublattice(std::size_t dim, IntMatrix basis) : dim_(dim), basis_(std::move(basis)) {}

  std::size_t dim_ = 0;
  IntMatrix basis_;
};

bool is_subset(const IntegerSublattice& a, const IntegerSublattice& b);
IntegerSublattice intersect(const IntegerSublattice& a, const IntegerSublattice& b);

/// Rational lattice L with Z^d ⊆ L ⊆ Q^d, i.e. the finite subgroup L/Z^d of
/// the torus. Stored as (D, B): D is the least common denominator and B the
/// row HNF of D·L, which always contains D·Z^d.
class RationalLattice {
 public:
  RationalLattice() = default;

  static RationalLattice integers(std::size_t dim);
  /// Z^d + span_Z(rows / denom).
  static RationalLattice from_generators(const std::vector<IntVector>& rows, const Integer& denom,
                                         std::size_t dim);
  /// G⁻¹·Z^d, whose image in the torus is ker σ_G.
  static RationalLattice from_kernel(const IntMatrix& g);

  std::size_t dim() const noexcept { return dim_; }
  const Integer& denom() const noexcept { return denom_; }
  const IntMatrix& basis() const noexcept { return basis_; }

  /// [L : Z^d] = D^d / det(B).
  Integer index() const;
  /// Membership of numerators/denominator.
  bool contains(const IntVector& numerators, const Integer& denominator) const;

  friend bool operator==(const RationalLattice&, const RationalLattice&) = default;

 private:
  RationalLattice(std::size_t dim, Integer denom, IntMatrix basis)
      : dim_(dim), denom_(std::move(denom)), basis_(std::move(basis)) {}

  std::size_t dim_ = 0;
  Integer denom_ = 1;
  IntMatrix basis_;
};

RationalLattice join(const RationalLattice& a, const RationalLattice& b);
/// F·L + Z^d.
RationalLattice pushforward(const IntMatrix& f, const RationalLattice& l);
/// G⁻¹·L.
RationalLattice preimage(const IntMatrix& g, const RationalLattice& l);
/// {m ∈ Z^d : <m, x> ∈ Z for all x ∈ L}.
IntegerSublattice dual_annihilator(const RationalLattice& l);
/// The rational lattice {x : <m, x> ∈ Z for all m ∈ M}; inverse of dual_annihilator.
RationalLattice dual_lattice(const IntegerSublattice& m);
bool is_subset(const RationalLattice& a, const RationalLattice& b);
bool equals(const RationalLattice& a, const RationalLattice& b);

}  // namespace qs
