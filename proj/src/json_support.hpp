#pragma once

#include <string>

#include "json.hpp"
#include "qs/error.hpp"
#include "qs/intmat.hpp"

namespace qs::detail {

using Json = nlohmann::ordered_json;

// Integers that fit in a signed 64-bit word are JSON numbers, larger ones strings.
inline Json integer_to_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

inline Integer integer_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) {
      throw Error(ErrorCode::ParseError, "field '" + field + "': not an integer: " + j.get<std::string>());
    }
    return x;
  }
  throw Error(ErrorCode::ParseError, "field '" + field + "': expected an integer");
}

inline Json vector_to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_to_json(x));
  return out;
}

inline IntVector vector_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "field '" + field + "': expected an array");
  IntVector out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integer_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

inline Json matrix_to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (const auto& r : m.rows()) out.push_back(vector_to_json(r));
  return out;
}

inline Json rows_to_json(const std::vector<IntVector>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) out.push_back(vector_to_json(r));
  return out;
}

inline std::vector<IntVector> rows_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "field '" + field + "': expected an array of rows");
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vector_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace qs::detail
