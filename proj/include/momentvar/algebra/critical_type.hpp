#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace momentvar::algebra {

// Integer eigenvalue pattern (k_1 < ... < k_r; d_1, ..., d_r).
struct CriticalType {
  std::vector<std::int64_t> ks;
  std::vector<int> ds;

  int dim() const;
  // "(0<1;1,2)".
  std::string str() const;
  // Inverse of str(). Throws std::invalid_argument on malformed text.
  static CriticalType parse(std::string_view text);

  friend bool operator==(const CriticalType&, const CriticalType&) = default;
};

}  // namespace momentvar::algebra
