#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "momentvar/algebra/algebra_tensor.hpp"
#include "momentvar/algebra/critical_type.hpp"

namespace momentvar::algebra {

struct CatalogEntry {
  std::string name;
  AlgebraTensor tensor;
  std::optional<CriticalType> expected_type;
  std::optional<double> expected_value;
  std::string expected_value_text;  // exact form, e.g. "10/3"; empty when unknown
};

// Looks up a named algebra.
//   d1..d6    with dim = 2 (classification of 2-dimensional algebras)
//   d1..d22   with dim = 3; "d22" is d22(1,1), "d22(x,y)" takes real x, y
//   mu_l(n), mu_r(n), mu_ca(n)   n >= 2
//   mat(m)    the full matrix algebra M_m(C) on the E_ij frame, m >= 1
//   U13, W103, U03   alternative models of d13, d17, d18 in dimension 3
// dim is ignored for names that fix their own dimension. Throws
// std::invalid_argument for unknown names or bad parameters.
CatalogEntry catalog_get(std::string_view name, std::size_t dim = 0);

// d22 with arbitrary complex parameters.
CatalogEntry d22_family(Complex x, Complex y);

// Names of the table rows for dim 2 or 3, in table order.
std::vector<std::string> table_names(std::size_t dim);

struct CatalogListing {
  std::string name;
  std::size_t dim;
};
// Every fixed-size entry plus small instances of the parametrized families.
std::vector<CatalogListing> catalog_list();

}  // namespace momentvar::algebra
