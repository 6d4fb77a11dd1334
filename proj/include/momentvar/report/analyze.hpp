#pragma once

#include <string>

#include <json.hpp>

#include "momentvar/algebra/algebra_tensor.hpp"

namespace momentvar::report {

struct AnalyzeReport {
  nlohmann::json json;
  std::string text;
  bool associative = false;
  bool critical = false;
};

// Moment spectrum, F, the critical test, the Nikolayevsky derivation and,
// for associative input, the substructures and (at critical points) the
// structure checks. Throws std::invalid_argument on the zero tensor.
AnalyzeReport analyze(const algebra::AlgebraTensor& mu);

}  // namespace momentvar::report
