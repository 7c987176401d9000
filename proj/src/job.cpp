#include "qs/job.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "json_support.hpp"
#include "qs/chain.hpp"
#include "qs/error.hpp"
#include "qs/finite_oracle.hpp"
#include "qs/presentation.hpp"
#include "qs/simplicity.hpp"

namespace qs {

namespace {

using detail::Json;

Error parse_error(const std::string& field, const std::string& what) {
  return Error(ErrorCode::ParseError, "field '" + field + "': " + what);
}

IntMatrix matrix_field(const Json& j, const std::string& field, std::optional<std::size_t> d) {
  if (!j.contains(field)) throw parse_error(field, "missing");
  const Json& m = j.at(field);
  if (!m.is_array() || m.empty()) throw parse_error(field, "expected a non-empty array of rows");
  const std::size_t n = d.value_or(m.size());
  if (m.size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "field '" + field + "': expected " + std::to_string(n) + " rows, got " + std::to_string(m.size()));
  }
  std::vector<IntVector> rows;
  for (std::size_t r = 0; r < n; ++r) {
    const std::string name = field + "[" + std::to_string(r) + "]";
    if (!m[r].is_array()) throw parse_error(name, "expected an array");
    if (m[r].size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "field '" + name + "': expected " + std::to_string(n) +
                                                    " entries, got " + std::to_string(m[r].size()));
    }
    rows.push_back(detail::vector_from_json(m[r], name));
  }
  return IntMatrix::from_rows(rows);
}

// Exact value of a decimal literal such as 0.001 or 1e-3, or of "p/q".
mpq_class rational_from_text(const std::string& s, const std::string& field) {
  mpq_class q;
  if (s.find('/') != std::string::npos) {
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw parse_error(field, "not a rational: " + s);
    q.canonicalize();
    return q;
  }
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) negative = s[i++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_dot = false, any = false;
  for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
    if (s[i] == '.' && !seen_dot) {
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i];
      any = true;
      if (seen_dot) ++scale;
    } else {
      throw parse_error(field, "not a number: " + s);
    }
  }
  if (!any) throw parse_error(field, "not a number: " + s);
  long exponent = 0;
  if (i < s.size()) {
    try {
      exponent = std::stol(s.substr(i + 1));
    } catch (const std::exception&) {
      throw parse_error(field, "bad exponent: " + s);
    }
  }
  mpz_class num(digits, 10), ten = 10, p;
  const long shift = exponent - scale;
  mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(shift < 0 ? -shift : shift));
  q = shift < 0 ? mpq_class(num, p) : mpq_class(num * p);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

template <class T>
T unsigned_field(const Json& j, const std::string& field, T fallback) {
  if (!j.contains(field)) return fallback;
  const Json& v = j.at(field);
  if (!v.is_number_integer() || v.get<long long>() < 0) throw parse_error(field, "expected a non-negative integer");
  return static_cast<T>(v.get<long long>());
}

bool bool_field(const Json& j, const std::string& field, bool fallback) {
  if (!j.contains(field)) return fallback;
  if (!j.at(field).is_boolean()) throw parse_error(field, "expected true or false");
  return j.at(field).get<bool>();
}

Json lattice_json(const RationalLattice& l) {
  return {{"denominator", detail::integer_to_json(l.denom())}, {"basis", detail::matrix_to_json(l.basis())}};
}

Json trace_json(const ChainTrace& t) {
  Json j;
  j["depth"] = t.depth;
  Json pos = Json::array(), neg = Json::array(), joins = Json::array(), ann = Json::array(), idx = Json::array();
  for (const auto& l : t.pos) pos.push_back(lattice_json(l));
  for (const auto& l : t.neg) neg.push_back(lattice_json(l));
  for (const auto& l : t.joins) joins.push_back(lattice_json(l));
  for (const auto& a : t.annihilators) ann.push_back(detail::matrix_to_json(a.basis()));
  for (const auto& i : t.indices) idx.push_back(detail::integer_to_json(i));
  j["pos"] = pos;
  j["neg"] = neg;
  j["joins"] = joins;
  j["annihilators"] = ann;
  j["indices"] = idx;
  return j;
}

Json tribool_json(Tribool t) {
  if (t == Tribool::Unknown) return "unknown";
  return t == Tribool::True;
}

Json hypotheses_json(const Hypotheses& h) {
  Json j;
  j["det_f"] = detail::integer_to_json(h.det_f);
  j["det_g"] = detail::integer_to_json(h.det_g);
  j["ker_f_size"] = detail::integer_to_json(h.ker_f_size);
  j["ker_g_size"] = detail::integer_to_json(h.ker_g_size);
  j["f_injective"] = h.f_injective;
  j["g_injective"] = h.g_injective;
  j["f_surjective"] = h.f_surjective;
  j["g_surjective"] = h.g_surjective;
  j["condition_L"] = tribool_json(h.condition_L);
  j["both_automorphisms"] = h.both_automorphisms;
  return j;
}

Json density_json(const DensityVerdict& v) {
  Json j;
  j["status"] = std::string(to_string(v.status));
  j["evidence"] = std::string(to_string(v.evidence));
  j["depth_used"] = v.depth_used;
  if (v.witness) j["witness"] = detail::vector_to_json(*v.witness);
  if (!v.transfer_charpoly.empty()) j["transfer_charpoly"] = poly::to_string(v.transfer_charpoly);
  if (v.unit_factor) j["unit_factor"] = poly::to_string(*v.unit_factor);
  j["annihilator"] = detail::matrix_to_json(v.annihilator_at_depth.basis());
  j["shortest_length_sq"] = detail::integer_to_json(v.shortest_length_sq);
  j["norm_bound"] = detail::integer_to_json(v.norm_bound);
  j["orbit_search_complete"] = v.orbit_search_complete;
  j["reason"] = v.reason;
  return j;
}

DecideOptions decide_options(const JobSpec& job) {
  DecideOptions o;
  o.density.max_depth = job.max_depth;
  o.density.norm_bound = job.norm_bound;
  o.density.algebraic = job.algebraic;
  return o;
}

struct Outcome {
  int exit_code = 0;
  Json body;
};

Outcome run_decide(const JobSpec& job, bool with_trace) {
  const SimplicityVerdict v = decide(job.f, job.g, decide_options(job));
  Outcome out;
  Json& j = out.body;
  j["status"] = std::string(to_string(v.status));
  Json rules = Json::array();
  for (const auto& r : v.rules) rules.push_back(r.id);
  j["rules"] = rules;
  if (v.density && v.density->witness) j["witness"] = detail::vector_to_json(*v.density->witness);
  j["hypotheses"] = hypotheses_json(v.hypotheses);
  j["kirchberg"] = v.kirchberg_flag;
  Json reasons = Json::array();
  for (const auto& r : v.rules)
    reasons.push_back({{"rule", r.id}, {"concluded", std::string(to_string(r.concluded))}, {"reason", r.reason}});
  j["reasons"] = reasons;
  if (v.normal_form) {
    j["normal_form"] = {{"n", detail::integer_to_json(v.normal_form->n)},
                        {"T", detail::matrix_to_json(v.normal_form->t)},
                        {"transcript", v.normal_form->transcript}};
  }
  if (v.density) j["density"] = density_json(*v.density);
  if (with_trace) {
    const std::size_t depth = std::max<std::size_t>(job.max_depth, 1);
    if (v.hypotheses.det_f != 0 && v.hypotheses.det_g != 0) j["trace"] = trace_json(compute_chain(job.f, job.g, depth));
  } else if (v.trace) {
    j["trace"] = trace_json(*v.trace);
  }
  out.exit_code = v.status == SimplicityStatus::Unknown ? 2 : 0;
  return out;
}

Outcome run_present(const JobSpec& job) {
  const Presentation p = present(job.f, job.g, job.toeplitz);
  Outcome out;
  out.body["status"] = "Presented";
  out.body["index_count"] = p.index_set.size();
  out.body["relation_groups"] = p.group_count();
  const PresentationFormat format = parse_format(job.presentation_format);
  if (format == PresentationFormat::Json) {
    out.body["presentation"] = Json::parse(render(p, format));
  } else {
    out.body["presentation"] = render(p, format);
  }
  return out;
}

Outcome run_oracle(const JobSpec& job) {
  Outcome out;
  Json& j = out.body;
  if (job.d != 1) throw Error(ErrorCode::DimensionMismatch, "oracle runs on d = 1 inputs");
  if (!job.f(0, 0).fits_slong_p() || !job.g(0, 0).fits_slong_p()) {
    throw Error(ErrorCode::InvalidArgument, "oracle entries must fit in a machine word");
  }
  const long a = job.f(0, 0).get_si(), b = job.g(0, 0).get_si();
  if (job.m) {
    const FiniteQuiver q(*job.m, a, b);
    const Gamma0Result g0 = gamma0_finite(q);
    const bool minimal = minimal_finite(q);
    j["status"] = minimal ? "Minimal" : "NotMinimal";
    j["m"] = q.m();
    j["a"] = q.a();
    j["b"] = q.b();
    j["edges"] = q.edges().size();
    j["condition_L"] = condition_L_finite(q);
    j["minimal"] = minimal;
    j["gamma0"] = g0.elements;
    j["gamma0_full"] = g0.is_everything(q.m());
    j["out_of_theorem_scope"] = g0.out_of_theorem_scope;
    return out;
  }
  const mpq_class eps = job.epsilon.value_or(mpq_class(1, 1000));
  const long depth = static_cast<long>(std::min<std::size_t>(job.max_depth, 64));
  const Density1dResult r = density_1d(a, b, std::max(depth, 1L), eps);
  j["status"] = std::string(to_string(r.kind));
  j["gap"] = r.gap.get_str();
  j["order"] = r.order.get_str();
  j["depth_reached"] = r.depth_reached;
  j["epsilon"] = eps.get_str();
  out.exit_code = r.kind == Density1dKind::Gap ? 2 : 0;
  return out;
}

Outcome run_sweep(const JobSpec& job) {
  const MinimalityReport report = verify_minimality_theorem(job.m_max, job.subset_m_max, job.jobs);
  Outcome out;
  out.body = Json::parse(report.to_json());
  out.body["status"] = report.ok() ? "Verified" : "Counterexample";
  out.exit_code = report.ok() ? 0 : 1;
  return out;
}

std::string text_of(const Json& j, const std::string& indent = "") {
  std::ostringstream out;
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      out << indent << key << ":\n" << text_of(value, indent + "  ");
    } else if (value.is_string()) {
      const std::string s = value.get<std::string>();
      if (s.find('\n') != std::string::npos) {
        out << indent << key << ":\n" << s;
      } else {
        out << indent << key << ": " << s << "\n";
      }
    } else {
      out << indent << key << ": " << value.dump() << "\n";
    }
  }
  return out.str();
}

std::string render_body(const Json& j, OutputFormat format) {
  return format == OutputFormat::Json ? j.dump() : text_of(j);
}

}  // namespace

JobSpec parse_job(const std::string& text, std::size_t default_depth, OutputFormat default_output) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("input is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "input must be a JSON object");

  JobSpec job;
  job.max_depth = default_depth;
  job.output = default_output;
  if (j.contains("command")) {
    if (!j.at("command").is_string()) throw parse_error("command", "expected a string");
    job.command = j.at("command").get<std::string>();
  } else {
    job.command = "decide";
  }
  static const char* const commands[] = {"decide", "trace", "present", "oracle", "sweep"};
  if (std::find(std::begin(commands), std::end(commands), job.command) == std::end(commands)) {
    throw parse_error("command", "unknown command '" + job.command + "'");
  }

  std::optional<std::size_t> d;
  if (j.contains("d")) {
    const Json& v = j.at("d");
    if (!v.is_number_integer() || v.get<long long>() < 1) throw parse_error("d", "expected a positive integer");
    d = static_cast<std::size_t>(v.get<long long>());
  }
  if (job.command != "sweep") {
    job.f = matrix_field(j, "F", d);
    job.g = matrix_field(j, "G", d);
    if (job.f.dim() != job.g.dim()) throw Error(ErrorCode::DimensionMismatch, "F and G differ in dimension");
    job.d = job.f.dim();
  }

  job.max_depth = unsigned_field<std::size_t>(j, "max_depth", job.max_depth);
  if (j.contains("norm_bound")) {
    job.norm_bound = detail::integer_from_json(j.at("norm_bound"), "norm_bound");
    if (job.norm_bound < 1) throw parse_error("norm_bound", "must be positive");
  }
  if (j.contains("epsilon")) {
    const Json& e = j.at("epsilon");
    if (e.is_string()) {
      job.epsilon = rational_from_text(e.get<std::string>(), "epsilon");
    } else if (e.is_number()) {
      job.epsilon = rational_from_text(e.dump(), "epsilon");
    } else {
      throw parse_error("epsilon", "expected a number or a \"p/q\" string");
    }
    if (*job.epsilon <= 0) throw parse_error("epsilon", "must be positive");
  }
  if (j.contains("output")) {
    const Json& o = j.at("output");
    if (o == "json") {
      job.output = OutputFormat::Json;
    } else if (o == "text") {
      job.output = OutputFormat::Text;
    } else {
      throw parse_error("output", "expected \"json\" or \"text\"");
    }
  }
  job.algebraic = bool_field(j, "algebraic", job.algebraic);
  job.toeplitz = bool_field(j, "toeplitz", job.toeplitz);
  if (j.contains("format")) {
    if (!j.at("format").is_string()) throw parse_error("format", "expected a string");
    job.presentation_format = j.at("format").get<std::string>();
  }
  if (j.contains("m")) {
    const Json& v = j.at("m");
    if (!v.is_number_integer() || v.get<long long>() < 1) throw parse_error("m", "expected a positive integer");
    job.m = static_cast<long>(v.get<long long>());
  }
  job.m_max = static_cast<long>(unsigned_field<std::size_t>(j, "m_max", static_cast<std::size_t>(job.m_max)));
  job.subset_m_max =
      static_cast<long>(unsigned_field<std::size_t>(j, "subset_m_max", static_cast<std::size_t>(job.subset_m_max)));
  job.jobs = unsigned_field<unsigned>(j, "jobs", job.jobs);
  return job;
}

JobResult run_job(const JobSpec& job) {
  Outcome o;
  if (job.command == "decide") {
    o = run_decide(job, false);
  } else if (job.command == "trace") {
    o = run_decide(job, true);
  } else if (job.command == "present") {
    o = run_present(job);
  } else if (job.command == "oracle") {
    o = run_oracle(job);
  } else if (job.command == "sweep") {
    o = run_sweep(job);
  } else {
    throw parse_error("command", "unknown command '" + job.command + "'");
  }
  return {o.exit_code, render_body(o.body, job.output)};
}

std::string render_error(const std::string& code, const std::string& message, OutputFormat format) {
  Json j;
  j["error"] = {{"code", code}, {"message", message}};
  return render_body(j, format);
}

JobResult run_line(const std::string& line, std::size_t default_depth, OutputFormat fallback_format) {
  try {
    return run_job(parse_job(line, default_depth, fallback_format));
  } catch (const Error& e) {
    return {1, render_error(std::string(to_string(e.code())), e.what(), fallback_format)};
  } catch (const std::exception& e) {
    return {1, render_error(std::string(to_string(ErrorCode::InternalError)), e.what(), fallback_format)};
  }
}

}  // namespace qs
