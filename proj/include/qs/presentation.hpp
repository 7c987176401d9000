#pragma once

#include <string>
#include <vector>

#include "qs/intmat.hpp"

namespace qs {

enum class RelationKind {
  /// S_ν* S_ν' = δ(ν, ν')
  Orthogonality = 1,
  /// S_ν = U^ν S
  Translate = 2,
  /// U_j^{a_j} S = S U^{G_j}
  Covariance = 3,
  /// Σ_ν U^ν S S* U^{-ν} = 1
  CuntzSum = 4,
};

struct Relation {
  RelationKind kind = RelationKind::Orthogonality;
  IntVector nu;
  IntVector nu_prime;
  /// Coordinate index j (0-based) for covariance relations.
  std::size_t j = 0;
  Integer exponent = 0;
  IntVector row;

  friend bool operator==(const Relation&, const Relation&) = default;
};

/// Generators and relations for the pair (diag(a), G) after F has been
/// brought to positive diagonal form.
struct Presentation {
  std::size_t d = 0;
  IntVector diag;
  std::vector<IntVector> index_set;
  std::vector<IntVector> g_rows;
  bool toeplitz = false;
  std::vector<Relation> relations;
  /// Steps that took the input pair to (diag(a), G).
  std::vector<std::string> normalization;
  IntMatrix source_f;
  IntMatrix source_g;

  /// Number of relation groups present (4, or 3 for the Toeplitz algebra).
  std::size_t group_count() const;
  std::size_t count(RelationKind kind) const;

  friend bool operator==(const Presentation&, const Presentation&) = default;
};

/// All ν with 0 <= ν_j < a_j, lexicographic with the last coordinate fastest.
/// Throws NonPositiveDiagonal if some a_j < 1.
std::vector<IntVector> index_set(const IntVector& f_diag);

Presentation present(const IntMatrix& f, const IntMatrix& g, bool toeplitz = false);

enum class PresentationFormat { Json, Latex, Text };
/// Parses "json", "latex" or "text"; throws UnsupportedFormat.
PresentationFormat parse_format(const std::string& name);

std::string render(const Presentation& p, PresentationFormat format);
std::string render(const Presentation& p, const std::string& format);
/// Inverse of render(p, Json).
Presentation parse_presentation(const std::string& json);

}  // namespace qs
