#include "dparity/spec_io.hpp"

#include <fstream>

#include "dparity/error.hpp"

namespace dparity {

namespace {

std::int64_t as_int(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number_integer()) throw Error(ErrorKind::ParseError, where + " must be an integer");
  return v.get<std::int64_t>();
}

IntVector int_list(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array())
    throw Error(ErrorKind::ParseError, std::string("\"") + key + "\" must be an array of integers");
  IntVector out;
  for (std::size_t n = 0; n < doc[key].size(); ++n)
    out.push_back(as_int(doc[key][n], std::string(key) + "[" + std::to_string(n + 1) + "]"));
  return out;
}

}  // namespace

SeriesSpec spec_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "spec must be a JSON object");
  if (!doc.contains("A") || !doc["A"].is_array() || doc["A"].empty())
    throw Error(ErrorKind::ParseError, "\"A\" must be a non-empty array of rows");
  IntRows A;
  for (std::size_t i = 0; i < doc["A"].size(); ++i) {
    const auto& row = doc["A"][i];
    if (!row.is_array()) throw Error(ErrorKind::ParseError, "row " + std::to_string(i + 1) + " of A is not an array");
    IntVector values;
    for (std::size_t j = 0; j < row.size(); ++j)
      values.push_back(as_int(row[j], "A[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]"));
    A.push_back(std::move(values));
  }
  IntVector h = int_list(doc, "h");
  IntVector k = int_list(doc, "k");
  std::vector<Rational> y;
  if (doc.contains("y")) {
    if (!doc["y"].is_array()) throw Error(ErrorKind::ParseError, "\"y\" must be an array");
    for (const auto& v : doc["y"]) {
      if (v.is_string()) y.push_back(parse_rational(v.get<std::string>()));
      else if (v.is_number_integer()) y.push_back(Rational(static_cast<long>(v.get<std::int64_t>())));
      else throw Error(ErrorKind::ParseError, "y entries must be rational strings such as \"1/3\"");
    }
  } else {
    y.assign(A.front().size(), Rational(0));
  }
  return validate_spec(A, h, k, y);
}

SeriesSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open spec file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid JSON in '") + path + "': " + e.what());
  }
  return spec_from_json(doc);
}

nlohmann::json spec_to_json(const SeriesSpec& spec) {
  nlohmann::json doc;
  doc["A"] = spec.A();
  doc["h"] = spec.h();
  doc["k"] = spec.k();
  nlohmann::json y = nlohmann::json::array();
  for (const auto& v : spec.y()) y.push_back(to_string(v));
  doc["y"] = y;
  return doc;
}

}  // namespace dparity
