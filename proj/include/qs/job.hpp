#pragma once

#include <optional>
#include <string>

#include <gmpxx.h>

#include "qs/intmat.hpp"

namespace qs {

enum class OutputFormat { Json, Text };

/// One batch request. Matrices are required for every command except sweep.
struct JobSpec {
  std::string command;
  std::size_t d = 0;
  IntMatrix f;
  IntMatrix g;
  std::size_t max_depth = 24;
  Integer norm_bound = 10000;
  std::optional<mpq_class> epsilon;
  OutputFormat output = OutputFormat::Json;
  bool algebraic = true;
  /// present: toeplitz variant and rendering ("json", "latex" or "text").
  bool toeplitz = false;
  std::string presentation_format = "json";
  /// oracle: modulus for the finite cyclic quiver (a = F, b = G); absent means the d = 1 torus check.
  std::optional<long> m;
  /// sweep: largest modulus and the subset-check bound.
  long m_max = 12;
  long subset_m_max = 12;
  unsigned jobs = 1;
};

/// Validates one JSON object. The defaults apply when "max_depth" or "output" are absent.
/// Throws ParseError naming the offending field, or DimensionMismatch.
JobSpec parse_job(const std::string& text, std::size_t default_depth = 24,
                  OutputFormat default_output = OutputFormat::Json);

struct JobResult {
  /// 0 definite verdict, 2 Unknown, 1 error.
  int exit_code = 0;
  std::string output;
};

JobResult run_job(const JobSpec& job);

/// Parses and runs one line; failures become an error object with exit code 1.
JobResult run_line(const std::string& line, std::size_t default_depth, OutputFormat fallback_format);

/// Error object {"error":{"code","message"}} in the requested format.
std::string render_error(const std::string& code, const std::string& message, OutputFormat format);

}  // namespace qs
