#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qs/chain.hpp"

namespace qs {

/// Three-valued logic for predicates the available theorems may leave open.
enum class Tribool { False, True, Unknown };
std::string_view to_string(Tribool t);

struct Hypotheses {
  Integer det_f;
  Integer det_g;
  /// |ker σ_F| = |det F|, finite exactly when det F ≠ 0 (reported as 0 otherwise).
  Integer ker_f_size;
  Integer ker_g_size;
  bool f_injective = false;
  bool g_injective = false;
  bool f_surjective = false;
  bool g_surjective = false;
  Tribool condition_L = Tribool::Unknown;
  bool both_automorphisms = false;
};

Hypotheses check_hypotheses(const IntMatrix& f, const IntMatrix& g);

/// Condition (L) from the non-injectivity clauses; Unknown when both maps are automorphisms.
Tribool condition_L(const IntMatrix& f, const IntMatrix& g);

/// Every eigenvalue of f has modulus > 1, decided on the exact characteristic polynomial.
bool is_dilation(const IntMatrix& f);

/// For upper or lower triangular g: true iff |g_jj| ≠ n for every j, in which
/// case the pair (n·I, g) is simple. Requires n >= 2 or |det g| ≠ 1.
bool triangular_criterion(const Integer& n, const IntMatrix& g);

/// (f·h, g·h) and (h·f, h·g): both preserve the verdict for nonsingular h.
std::pair<IntMatrix, IntMatrix> reduce_right(const IntMatrix& f, const IntMatrix& g, const IntMatrix& h);
std::pair<IntMatrix, IntMatrix> reduce_left(const IntMatrix& f, const IntMatrix& g, const IntMatrix& h);

struct NormalForm {
  Integer n;
  IntMatrix t;
  std::vector<std::string> transcript;
};

/// (|det f|·I, ±D·V·U) where adj(f)·g = U·D·V is the Smith decomposition.
NormalForm normalize(const IntMatrix& f, const IntMatrix& g);

enum class SimplicityStatus { Simple, NotSimple, Unknown };
std::string_view to_string(SimplicityStatus s);

struct RuleFiring {
  std::string id;
  std::string reason;
  /// The status this rule concluded, Unknown for purely informational rules.
  SimplicityStatus concluded = SimplicityStatus::Unknown;
};

struct SimplicityVerdict {
  SimplicityStatus status = SimplicityStatus::Unknown;
  std::vector<RuleFiring> rules;
  Hypotheses hypotheses;
  std::optional<DensityVerdict> density;
  std::optional<NormalForm> normal_form;
  /// Attached when no rule decides.
  std::optional<ChainTrace> trace;
  bool kirchberg_flag = false;
};

struct DecideOptions {
  DensityOptions density;
  /// Run the chain even after a closed-form rule decided, and fail loudly on disagreement.
  bool cross_check = true;
};

SimplicityVerdict decide(const IntMatrix& f, const IntMatrix& g, const DecideOptions& options = {});

}  // namespace qs
