#include "momentvar/algebra/json_io.hpp"

#include <cmath>
#include <vector>

namespace momentvar::algebra {

using nlohmann::json;

namespace {

std::size_t read_index(const json& term, const char* key, std::size_t dim) {
  const auto it = term.find(key);
  if (it == term.end() || !it->is_number_integer()) {
    throw ParseError(std::string("term field '") + key + "' must be an integer");
  }
  const auto v = it->get<long long>();
  if (v < 1 || static_cast<std::size_t>(v) > dim) {
    throw ParseError(std::string("term index '") + key + "' = " + std::to_string(v) +
                     " out of range 1.." + std::to_string(dim));
  }
  return static_cast<std::size_t>(v);
}

Complex read_complex(const json& term) {
  const auto it = term.find("c");
  if (it == term.end()) throw ParseError("term field 'c' missing");
  if (it->is_number()) return it->get<double>();
  if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number()) {
    throw ParseError("term field 'c' must be [re, im]");
  }
  const Complex z((*it)[0].get<double>(), (*it)[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw ParseError("term coefficient is not finite");
  }
  return z;
}

}  // namespace

AlgebraTensor algebra_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("algebra document must be an object");
  const auto dim_it = doc.find("dim");
  if (dim_it == doc.end() || !dim_it->is_number_integer() || dim_it->get<long long>() < 1 ||
      dim_it->get<long long>() > 64) {
    throw ParseError("'dim' must be an integer in 1..64");
  }
  const auto dim = dim_it->get<std::size_t>();
  const auto terms_it = doc.find("terms");
  if (terms_it == doc.end() || !terms_it->is_array()) throw ParseError("'terms' must be an array");

  std::vector<Term> terms;
  terms.reserve(terms_it->size());
  for (const json& t : *terms_it) {
    if (!t.is_object()) throw ParseError("each term must be an object");
    terms.push_back({read_index(t, "i", dim), read_index(t, "j", dim), read_index(t, "k", dim),
                     read_complex(t)});
  }
  try {
    return AlgebraTensor::from_terms(dim, terms);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

AlgebraTensor parse_algebra(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return algebra_from_json(doc);
}

json algebra_to_json(const AlgebraTensor& mu) {
  const std::size_t n = mu.dim();
  json terms = json::array();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Complex z = mu(i, j, k);
        if (z == 0.0) continue;
        terms.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"c", {z.real(), z.imag()}}});
      }
  return {{"dim", n}, {"terms", terms}};
}

std::string serialize_algebra(const AlgebraTensor& mu, int indent) {
  return algebra_to_json(mu).dump(indent);
}

json type_to_json(const CriticalType& t) { return {{"ks", t.ks}, {"ds", t.ds}}; }

}  // namespace momentvar::algebra
