#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qs/lattice.hpp"
#include "qs/polynomial.hpp"

namespace qs {

/// The subgroup chain of the relation (σ_F, σ_G) on the torus, as lattices.
///
/// pos[n] is the n-th positive stage β⁻¹(α(·)) starting from Z^d, neg[n]
/// the n-th negative stage α⁻¹(β(·)); joins[n] = pos[n] + neg[n]
/// approximates Γ₀ and annihilators[n] is its character annihilator.
struct ChainTrace {
  IntMatrix f;
  IntMatrix g;
  std::size_t depth = 0;
  std::vector<RationalLattice> pos;
  std::vector<RationalLattice> neg;
  std::vector<RationalLattice> joins;
  std::vector<IntegerSublattice> annihilators;
  std::vector<Integer> indices;
};

/// preimage(g, pushforward(f, l)).
RationalLattice step_pos(const IntMatrix& f, const IntMatrix& g, const RationalLattice& l);
/// preimage(f, pushforward(g, l)).
RationalLattice step_neg(const IntMatrix& f, const IntMatrix& g, const RationalLattice& l);

/// Gᵀ·(F⁻ᵀ·M ∩ Z^d): the annihilator of step_pos(f, g, dual_lattice(M)),
/// computed without passing through the primal side.
IntegerSublattice annihilator_step_pos(const IntMatrix& f, const IntMatrix& g, const IntegerSublattice& m);
/// Fᵀ·(G⁻ᵀ·M ∩ Z^d).
IntegerSublattice annihilator_step_neg(const IntMatrix& f, const IntMatrix& g, const IntegerSublattice& m);

ChainTrace compute_chain(const IntMatrix& f, const IntMatrix& g, std::size_t depth);

enum class DensityStatus { Dense, NotDense, Unknown };
std::string_view to_string(DensityStatus s);

/// How a density verdict was reached.
enum class DensityEvidence {
  None,
  /// Chain fixed point: A_j = A_{j+1} and both one-sided steps keep A_j.
  Stabilized,
  /// A character whose forward and backward orbits both cycle.
  OrbitCycle,
  /// A T-invariant lattice from a unit factor of the characteristic polynomial of T = Fᵀ·G⁻ᵀ.
  InvariantLattice,
  /// The characteristic polynomial of T has no monic integer factor with constant ±1.
  NoUnitFactor,
};
std::string_view to_string(DensityEvidence e);

struct DensityOptions {
  std::size_t max_depth = 24;
  Integer norm_bound = 10000;
  /// Use the characteristic-polynomial certificate; without it Dense is never returned.
  bool algebraic = true;
  /// Total orbit steps allowed for the bounded orbit search.
  std::size_t orbit_budget = 200000;
  /// Step cap for a single orbit before it is left undecided.
  std::size_t orbit_step_cap = 512;
};

struct DensityVerdict {
  DensityStatus status = DensityStatus::Unknown;
  DensityEvidence evidence = DensityEvidence::None;
  std::optional<IntVector> witness;
  std::size_t depth_used = 0;
  IntegerSublattice annihilator_at_depth;
  /// Characteristic polynomial of T, scaled to integers (primitive), and the unit factor if any.
  poly::IntPoly transfer_charpoly;
  std::optional<poly::IntPoly> unit_factor;
  /// Resolution data from the chain: squared Euclidean length of the
  /// shortest vector of the deepest annihilator, and the norm bound used.
  Integer shortest_length_sq = 0;
  Integer norm_bound = 0;
  /// True when every character of ∞-norm <= norm_bound in the deepest
  /// annihilator was followed to a definite orbit outcome.
  bool orbit_search_complete = false;
  std::string reason;
};

DensityVerdict decide_density(const IntMatrix& f, const IntMatrix& g, const DensityOptions& options = {});

/// Characteristic polynomial of T = Fᵀ·G⁻ᵀ with rational coefficients.
poly::RatPoly transfer_charpoly(const IntMatrix& f, const IntMatrix& g);

}  // namespace qs
