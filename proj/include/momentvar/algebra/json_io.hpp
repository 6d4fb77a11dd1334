#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "momentvar/algebra/algebra_tensor.hpp"
#include "momentvar/algebra/critical_type.hpp"

namespace momentvar::algebra {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"dim": n, "terms": [{"i": 1, "j": 1, "k": 2, "c": [re, im]}, ...]} with
// 1-based indices. Throws ParseError on malformed documents, out-of-range
// indices and duplicate (i, j, k) triples.
AlgebraTensor algebra_from_json(const nlohmann::json& doc);
AlgebraTensor parse_algebra(std::string_view text);

// Nonzero coefficients in (i, j, k) order.
nlohmann::json algebra_to_json(const AlgebraTensor& mu);
std::string serialize_algebra(const AlgebraTensor& mu, int indent = -1);

// {"ks": [...], "ds": [...]}.
nlohmann::json type_to_json(const CriticalType& t);

}  // namespace momentvar::algebra
