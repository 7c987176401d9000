#include "qs/presentation.hpp"

#include <sstream>

#include "json_support.hpp"
#include "qs/error.hpp"

namespace qs {

namespace {

using detail::Json;

std::string_view kind_name(RelationKind k) {
  switch (k) {
    case RelationKind::Orthogonality: return "orthogonality";
    case RelationKind::Translate: return "translate";
    case RelationKind::Covariance: return "covariance";
    case RelationKind::CuntzSum: return "cuntz-sum";
  }
  return "orthogonality";
}

RelationKind kind_from_name(const std::string& s) {
  for (auto k : {RelationKind::Orthogonality, RelationKind::Translate, RelationKind::Covariance,
                 RelationKind::CuntzSum})
    if (kind_name(k) == s) return k;
  throw Error(ErrorCode::ParseError, "unknown relation kind '" + s + "'");
}

// Symbol styles shared by the LaTeX and plain-text renderers.
struct Style {
  bool latex;
  std::size_t d;

  std::string sup(const std::string& e) const { return latex ? "^{" + e + "}" : "^" + e; }
  std::string sub(const std::string& e) const { return latex ? "_{" + e + "}" : "_" + e; }
  std::string star() const { return latex ? "^{*}" : "*"; }

  std::string multi_index(const IntVector& nu) const {
    if (d == 1) return nu[0].get_str();
    std::string s = "(";
    for (std::size_t i = 0; i < nu.size(); ++i) s += (i ? "," : "") + nu[i].get_str();
    return s + ")";
  }

  std::string unitary(std::size_t j) const { return d == 1 ? "U" : "U" + sub(std::to_string(j + 1)); }

  std::string power(std::size_t j, const Integer& e) const {
    if (e == 0) return "";
    return unitary(j) + (e == 1 ? "" : sup(e.get_str()));
  }

  // U^e as a product of powers of the U_j, empty when e = 0.
  std::string word(const IntVector& e) const {
    std::string s;
    for (std::size_t j = 0; j < e.size(); ++j) {
      const std::string p = power(j, e[j]);
      if (p.empty()) continue;
      if (!s.empty() && !latex) s += " ";
      s += p;
    }
    return s;
  }

  std::string isometry(const IntVector& nu) const { return "S" + sub(multi_index(nu)); }

  std::string join(const std::string& a, const std::string& b) const {
    if (latex || a.empty() || b.empty()) return a + b;
    return a + " " + b;
  }

  std::string relation(const Relation& r) const {
    switch (r.kind) {
      case RelationKind::Orthogonality:
        return join(isometry(r.nu) + star(), isometry(r.nu_prime)) + " = " + (r.nu == r.nu_prime ? "1" : "0");
      case RelationKind::Translate:
        return isometry(r.nu) + " = " + join(word(r.nu), "S");
      case RelationKind::Covariance:
        return join(power(r.j, r.exponent), "S") + " = " + join("S", word(r.row));
      case RelationKind::CuntzSum:
        break;
    }
    return "";
  }

  // Σ_ν U^ν S S* U^{-ν} = 1 over the whole index set.
  std::string cuntz_sum(const std::vector<IntVector>& index) const {
    std::string s;
    for (std::size_t i = 0; i < index.size(); ++i) {
      IntVector neg = index[i];
      for (auto& x : neg) x = -x;
      if (i) s += " + ";
      s += join(join(word(index[i]), latex ? "SS^{*}" : "S S*"), word(neg));
    }
    return s + " = 1";
  }
};

std::string generators_line(const Presentation& p, const Style& st) {
  std::string s;
  for (std::size_t i = 0; i < p.index_set.size(); ++i) s += (i ? ", " : "") + st.isometry(p.index_set[i]);
  std::string u;
  for (std::size_t j = 0; j < p.d; ++j) u += (j ? ", " : "") + st.unitary(j);
  return "isometries " + s + "; commuting unitaries " + u + " (full spectrum)";
}

std::string render_lines(const Presentation& p, bool latex) {
  const Style st{latex, p.d};
  std::ostringstream out;
  const std::size_t groups = p.group_count();
  auto body = [&](RelationKind k) {
    std::vector<std::string> lines;
    for (const auto& r : p.relations) {
      if (r.kind != k) continue;
      lines.push_back(k == RelationKind::CuntzSum ? st.cuntz_sum(p.index_set) : st.relation(r));
    }
    return lines;
  };
  if (latex) {
    out << "% " << generators_line(p, st) << "\n";
    out << "% N = " << p.index_set.size() << (p.toeplitz ? ", Toeplitz algebra" : "") << "\n";
    out << "\\begin{enumerate}\n";
    for (std::size_t g = 1; g <= groups; ++g) {
      out << "\\item ";
      const auto lines = body(static_cast<RelationKind>(g));
      for (std::size_t i = 0; i < lines.size(); ++i) out << (i ? ",\\ " : "") << "$" << lines[i] << "$";
      out << "\n";
    }
    out << "\\end{enumerate}\n";
  } else {
    out << "presentation d=" << p.d << " diag=" << to_string(p.diag) << " N=" << p.index_set.size()
        << " toeplitz=" << (p.toeplitz ? "true" : "false") << "\n";
    out << "generators: " << generators_line(p, st) << "\n";
    for (std::size_t g = 1; g <= groups; ++g) {
      const auto kind = static_cast<RelationKind>(g);
      const auto lines = body(kind);
      out << "\n[" << g << "] " << kind_name(kind) << " (" << lines.size() << ")\n";
      for (const auto& l : lines) out << "  " << l << "\n";
    }
  }
  return out.str();
}

Json relation_to_json(const Relation& r) {
  Json j;
  j["group"] = static_cast<int>(r.kind);
  j["kind"] = std::string(kind_name(r.kind));
  switch (r.kind) {
    case RelationKind::Orthogonality:
      j["nu"] = detail::vector_to_json(r.nu);
      j["nu_prime"] = detail::vector_to_json(r.nu_prime);
      j["value"] = r.nu == r.nu_prime ? 1 : 0;
      break;
    case RelationKind::Translate:
      j["nu"] = detail::vector_to_json(r.nu);
      break;
    case RelationKind::Covariance:
      j["j"] = r.j;
      j["exponent"] = detail::integer_to_json(r.exponent);
      j["row"] = detail::vector_to_json(r.row);
      break;
    case RelationKind::CuntzSum:
      break;
  }
  return j;
}

Relation relation_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw Error(ErrorCode::ParseError, "relation: missing 'kind'");
  Relation r;
  r.kind = kind_from_name(j.at("kind").get<std::string>());
  switch (r.kind) {
    case RelationKind::Orthogonality:
      r.nu = detail::vector_from_json(j.at("nu"), "nu");
      r.nu_prime = detail::vector_from_json(j.at("nu_prime"), "nu_prime");
      break;
    case RelationKind::Translate:
      r.nu = detail::vector_from_json(j.at("nu"), "nu");
      break;
    case RelationKind::Covariance:
      r.j = j.at("j").get<std::size_t>();
      r.exponent = detail::integer_from_json(j.at("exponent"), "exponent");
      r.row = detail::vector_from_json(j.at("row"), "row");
      break;
    case RelationKind::CuntzSum:
      break;
  }
  return r;
}

}  // namespace

std::size_t Presentation::group_count() const { return toeplitz ? 3 : 4; }

std::size_t Presentation::count(RelationKind kind) const {
  std::size_t n = 0;
  for (const auto& r : relations) n += r.kind == kind;
  return n;
}

std::vector<IntVector> index_set(const IntVector& f_diag) {
  for (const auto& a : f_diag)
    if (a < 1) throw Error(ErrorCode::NonPositiveDiagonal, "diagonal entries must be positive, got " + a.get_str());
  std::vector<IntVector> out;
  IntVector nu(f_diag.size(), Integer(0));
  while (true) {
    out.push_back(nu);
    std::size_t k = nu.size();
    while (k > 0) {
      --k;
      if (++nu[k] < f_diag[k]) break;
      nu[k] = 0;
      if (k == 0) return out;
    }
    if (nu.empty()) return out;
  }
}

Presentation present(const IntMatrix& f, const IntMatrix& g, bool toeplitz) {
  if (f.dim() != g.dim() || f.dim() == 0) throw Error(ErrorCode::DimensionMismatch, "F and G differ in dimension");
  if (det(f) == 0 || det(g) == 0) throw Error(ErrorCode::SingularMatrix, "F and G must be nonsingular");
  const std::size_t d = f.dim();
  Presentation p;
  p.d = d;
  p.toeplitz = toeplitz;
  p.source_f = f;
  p.source_g = g;

  IntMatrix diag_f = f, new_g = g;
  if (f.is_diagonal()) {
    IntVector signs(d, Integer(1));
    bool any_negative = false;
    for (std::size_t i = 0; i < d; ++i)
      if (f(i, i) < 0) {
        signs[i] = -1;
        any_negative = true;
      }
    if (any_negative) {
      const IntMatrix s = IntMatrix::diagonal(signs);
      diag_f = s * f;
      new_g = s * g;
      p.normalization.push_back("left-multiply by the sign matrix " + s.to_string() + " to make F positive");
    }
  } else {
    const SmithDecomposition s = snf(f);
    const IntMatrix u_inv = det(s.u) * adjugate(s.u);
    const IntMatrix v_inv = det(s.v) * adjugate(s.v);
    diag_f = s.d;
    new_g = u_inv * g * v_inv;
    p.normalization.push_back("Smith form F = U·D·V with U = " + s.u.to_string() + ", V = " + s.v.to_string());
    p.normalization.push_back("left-multiply by U^-1 and right-multiply by V^-1: (F, G) -> (D, U^-1·G·V^-1)");
  }

  for (std::size_t i = 0; i < d; ++i) p.diag.push_back(diag_f(i, i));
  p.index_set = index_set(p.diag);
  p.g_rows = new_g.rows();

  for (std::size_t a = 0; a < p.index_set.size(); ++a)
    for (std::size_t b = a; b < p.index_set.size(); ++b) {
      Relation r;
      r.kind = RelationKind::Orthogonality;
      r.nu = p.index_set[a];
      r.nu_prime = p.index_set[b];
      p.relations.push_back(std::move(r));
    }
  for (const auto& nu : p.index_set) {
    Relation r;
    r.kind = RelationKind::Translate;
    r.nu = nu;
    p.relations.push_back(std::move(r));
  }
  for (std::size_t j = 0; j < d; ++j) {
    Relation r;
    r.kind = RelationKind::Covariance;
    r.j = j;
    r.exponent = p.diag[j];
    r.row = p.g_rows[j];
    p.relations.push_back(std::move(r));
  }
  if (!toeplitz) {
    Relation r;
    r.kind = RelationKind::CuntzSum;
    p.relations.push_back(std::move(r));
  }
  return p;
}

PresentationFormat parse_format(const std::string& name) {
  if (name == "json") return PresentationFormat::Json;
  if (name == "latex") return PresentationFormat::Latex;
  if (name == "text") return PresentationFormat::Text;
  throw Error(ErrorCode::UnsupportedFormat, "unsupported presentation format '" + name + "'");
}

std::string render(const Presentation& p, const std::string& format) { return render(p, parse_format(format)); }

std::string render(const Presentation& p, PresentationFormat format) {
  switch (format) {
    case PresentationFormat::Latex: return render_lines(p, true);
    case PresentationFormat::Text: return render_lines(p, false);
    case PresentationFormat::Json: break;
  }
  Json j;
  j["d"] = p.d;
  j["diag"] = detail::vector_to_json(p.diag);
  j["toeplitz"] = p.toeplitz;
  j["index_set"] = detail::rows_to_json(p.index_set);
  j["g_rows"] = detail::rows_to_json(p.g_rows);
  const Style st{false, p.d};
  Json gens;
  Json iso = Json::array();
  for (const auto& nu : p.index_set) iso.push_back(st.isometry(nu));
  Json uni = Json::array();
  for (std::size_t k = 0; k < p.d; ++k) uni.push_back(st.unitary(k));
  gens["isometries"] = iso;
  gens["unitaries"] = uni;
  gens["unitary_annotation"] = "commuting, full spectrum";
  j["generators"] = gens;
  Json rel = Json::array();
  for (const auto& r : p.relations) rel.push_back(relation_to_json(r));
  j["relations"] = rel;
  j["normalization"] = p.normalization;
  j["source"] = {{"F", detail::matrix_to_json(p.source_f)}, {"G", detail::matrix_to_json(p.source_g)}};
  return j.dump(2);
}

Presentation parse_presentation(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("presentation JSON: ") + e.what());
  }
  try {
    Presentation p;
    p.d = j.at("d").get<std::size_t>();
    p.diag = detail::vector_from_json(j.at("diag"), "diag");
    p.toeplitz = j.at("toeplitz").get<bool>();
    p.index_set = detail::rows_from_json(j.at("index_set"), "index_set");
    p.g_rows = detail::rows_from_json(j.at("g_rows"), "g_rows");
    for (const auto& r : j.at("relations")) p.relations.push_back(relation_from_json(r));
    p.normalization = j.at("normalization").get<std::vector<std::string>>();
    p.source_f = IntMatrix::from_rows(detail::rows_from_json(j.at("source").at("F"), "source.F"));
    p.source_g = IntMatrix::from_rows(detail::rows_from_json(j.at("source").at("G"), "source.G"));
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("presentation JSON: ") + e.what());
  }
}

}  // namespace qs
