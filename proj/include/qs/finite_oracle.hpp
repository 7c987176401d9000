#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qs {

/// The relation quiver of x ↦ a·x and x ↦ b·x on Z_m: an edge (x, y) for
/// every pair with a·y ≡ b·x (mod m), with range x and source y.
class FiniteQuiver {
 public:
  /// Requires m >= 1; a and b are reduced mod m.
  FiniteQuiver(long m, long a, long b);

  long m() const noexcept { return m_; }
  long a() const noexcept { return a_; }
  long b() const noexcept { return b_; }
  const std::vector<std::pair<long, long>>& edges() const noexcept { return edges_; }
  /// Ranges r(e) of the edges with source y.
  const std::vector<long>& ranges_from(long y) const { return by_source_[static_cast<std::size_t>(y)]; }

  bool alpha_surjective() const;
  bool beta_surjective() const;

 private:
  long m_, a_, b_;
  std::vector<std::pair<long, long>> edges_;
  std::vector<std::vector<long>> by_source_;
};

/// True iff every loop has an exit.
bool condition_L_finite(const FiniteQuiver& q);

/// Smallest saturated hereditary set containing `v`.
std::vector<bool> saturated_hereditary_closure(const FiniteQuiver& q, long v);

/// True iff the only saturated hereditary sets are ∅ and Z_m.
bool minimal_finite(const FiniteQuiver& q);

struct Gamma0Result {
  /// Sorted elements of the subgroup generated by every stage of the chain.
  std::vector<long> elements;
  /// The subgroup equals (m/order)·Z_m.
  long order = 1;
  /// Depth at which both one-sided sequences stopped growing.
  long depth = 0;
  /// Set when a or b is not a unit mod m, so the theorems do not apply.
  bool out_of_theorem_scope = false;
  bool is_everything(long m) const { return order == m; }
};

Gamma0Result gamma0_finite(const FiniteQuiver& q);

/// U is hereditary and saturated (from the definitions), U as a bit mask over Z_m.
bool is_saturated_hereditary(const FiniteQuiver& q, std::uint64_t u);
/// α⁻¹(β(U)) = β⁻¹(α(U)) = U.
bool satisfies_invariance_formula(const FiniteQuiver& q, std::uint64_t u);

struct MinimalityCounterexample {
  long m, a, b;
  bool gamma0_full;
  bool minimal;
};

struct SubsetCounterexample {
  long m, a, b;
  std::uint64_t subset;
  bool definitional;
  bool formula;
};

struct KernelCounterexample {
  long m, a, b;
  std::uint64_t subset;
};

struct MinimalityReport {
  long m_max = 0;
  long subset_m_max = 0;
  std::size_t instances = 0;
  std::size_t subsets_checked = 0;
  std::vector<MinimalityCounterexample> counterexamples;
  std::vector<SubsetCounterexample> subset_counterexamples;
  std::vector<KernelCounterexample> kernel_counterexamples;
  bool ok() const {
    return counterexamples.empty() && subset_counterexamples.empty() && kernel_counterexamples.empty();
  }
  std::string to_json() const;
};

/// Over every m <= m_max and every pair of units (a, b) mod m, checks that
/// Γ₀ = Z_m exactly when the quiver is minimal. For m <= subset_m_max it also
/// checks, over all subsets U, that U is saturated hereditary exactly when
/// α⁻¹(β(U)) = β⁻¹(α(U)) = U, and that such U are unions of kernel cosets.
/// Requires m_max <= 64 and subset_m_max <= 20; `jobs` threads share the sweep.
MinimalityReport verify_minimality_theorem(long m_max, long subset_m_max = 12, unsigned jobs = 1);

enum class Density1dKind { DenseAtResolution, NotDense, Gap };
std::string_view to_string(Density1dKind k);

struct Density1dResult {
  Density1dKind kind = Density1dKind::Gap;
  /// Largest gap between consecutive points of the generated subgroup of [0, 1).
  mpq_class gap;
  /// Order of the generated subgroup.
  mpz_class order;
  long depth_reached = 0;
};

/// Materializes the stages for |n| <= depth on T = R/Z as explicit fractions.
/// Stops early with DenseAtResolution once the gap drops below epsilon.
Density1dResult density_1d(long f, long g, long depth, const mpq_class& epsilon);

}  // namespace qs
